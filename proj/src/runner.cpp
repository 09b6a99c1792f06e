#include "udn/runner.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "udn/antenna.hpp"
#include "udn/energy.hpp"
#include "udn/kernels.hpp"
#include "udn/link.hpp"
#include "udn/propagation.hpp"
#include "udn/rng.hpp"
#include "udn/stats.hpp"

namespace udn {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::uint64_t run_seed(const ScenarioConfig& cfg, int run_index) {
  return derive_seed({cfg.seed, static_cast<std::uint64_t>(run_index)});
}

std::string num(double x) {
  std::ostringstream os;
  os << std::setprecision(12) << x;
  return os.str();
}

}  // namespace

Deployment build_run_deployment(const ScenarioConfig& cfg, int run_index) {
  Deployment dep = build_hex_grid(cfg);
  Rng rng = make_rng(run_seed(cfg, run_index), Stream::ue_drop);
  drop_ues(cfg, dep, rng);
  return dep;
}

RunMetrics execute_run(const ScenarioConfig& cfg, int run_index, KernelMode mode) {
  validate(cfg);
  const Deployment dep = build_run_deployment(cfg, run_index);
  const std::uint64_t seed = run_seed(cfg, run_index);
  const PathGainModel path = PathGainModel::from_config(cfg);
  DipoleArrayConfig antenna;
  antenna.n_horizontal = cfg.num_bs_antennas;
  const auto rc = RadioConstants::from_config(cfg);

  std::vector<double> xs, ys;
  for (const Ue& u : dep.ues) {
    xs.push_back(u.x_m);
    ys.push_back(u.y_m);
  }
  const double margin = cfg.guard_tiers * cfg.isd_m;
  ShadowField::Params sp{cfg.shadow_sigma_db, cfg.shadow_inter_site_correlation, cfg.shadow_decorrelation_m,
                         -margin, cfg.region_side_m + margin};
  const ShadowField shadow(xs, ys, sp, seed);

  const kernels::GainInputs gin{dep.sites, dep.ues, cfg.ue_height_m, &path, &antenna, &shadow};
  const bool par = mode == KernelMode::parallel;
  const auto gains = par ? kernels::gain_matrix_parallel(gin) : kernels::gain_matrix_serial(gin);

  // Every site shares one height, hence one calibrated power.
  const double tx_dbm = calibrate_tx_power_dbm(dep.sites.front(), cfg, path, antenna);
  const std::vector<double> tx(dep.sites.size(), tx_dbm);
  const auto rx = par ? kernels::rx_power_parallel(gains, tx) : kernels::rx_power_serial(gains, tx);

  const AssociationState st = associate(rx, cfg.idle_mode_enabled, rc);
  const kernels::BeamInputs bin{dep.sites, dep.ues, cfg.num_bs_antennas, antenna.horizontal_spacing_wavelengths};
  const auto beams = cfg.num_bs_antennas > 1 ? kernels::select_beams(bin, st) : std::vector<BeamWeights>(dep.ues.size());
  const double noise = rc.noise_power_mw();
  const auto sinr = par ? kernels::data_sinr_parallel(rx, st, beams, bin, noise)
                        : kernels::data_sinr_serial(rx, st, beams, bin, noise);

  RunMetrics m;
  m.n_ues = static_cast<int>(dep.ues.size());
  for (std::size_t u = 0; u < dep.ues.size(); ++u) {
    if (st.hole[u]) {
      ++m.n_holes;
      continue;
    }
    const auto site = static_cast<std::size_t>(st.serving[u]);
    if (dep.sites[site].in_guard_tier) {
      ++m.n_guard_served;
      continue;
    }
    m.sinr_samples_db.push_back(sinr[u]);
    m.ue_throughputs_bps.push_back(
        ue_throughput_bps(sinr[u], st.ues_per_site[site], rc.bandwidth_hz, rc.shannon_backoff_db));
  }
  m.coverage_hole_fraction = m.n_ues > 0 ? static_cast<double>(m.n_holes) / m.n_ues : 0.0;

  int served_at_active = 0;
  std::vector<SiteEnergyState> energy_states;
  for (const Site& s : dep.sites) {
    if (s.in_guard_tier) continue;
    ++m.n_interior_sites;
    const auto i = static_cast<std::size_t>(s.id);
    if (st.active[i]) {
      ++m.n_active_sites;
      served_at_active += st.ues_per_site[i];
      m.site_tx_power_dbm.push_back(tx_dbm);
    }
    energy_states.push_back({st.active[i] ? SiteState::active : SiteState::idle, 1.0});
  }
  const double area = cfg.region_area_km2();
  m.active_sites_per_km2 = m.n_active_sites / area;
  m.mean_ues_per_active_site = m.n_active_sites > 0 ? static_cast<double>(served_at_active) / m.n_active_sites : 0.0;
  m.network_tx_power_dbm_per_km2 =
      linear_to_db(m.n_active_sites * cfg.num_bs_antennas * db_to_linear(tx_dbm) / area);

  const auto& table = PowerTable::standard();
  if (table.has_row(cfg.isd_m, cfg.num_bs_antennas)) {
    const auto& row = table.row(cfg.isd_m, cfg.num_bs_antennas);
    for (int k = 0; k < 5; ++k)
      m.ee_by_sleep_model[static_cast<std::size_t>(k)] =
          network_energy_efficiency_bps_per_w(m.ue_throughputs_bps, energy_states, row, static_cast<SleepModel>(k + 1));
    m.ee_bps_per_w = m.ee_by_sleep_model[static_cast<std::size_t>(cfg.sleep_model) - 1];
  } else {
    m.ee_by_sleep_model.fill(kNaN);
    m.ee_bps_per_w = kNaN;
  }
  return m;
}

std::vector<RunMetrics> execute_runs(const ScenarioConfig& cfg) {
  validate(cfg);
  std::vector<RunMetrics> out(static_cast<std::size_t>(cfg.runs));
  std::vector<std::string> errors(out.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (int r = 0; r < cfg.runs; ++r) {
    try {
      out[static_cast<std::size_t>(r)] = execute_run(cfg, r, KernelMode::serial);
    } catch (const std::exception& e) {
      errors[static_cast<std::size_t>(r)] = e.what();
    }
  }
  for (std::size_t r = 0; r < errors.size(); ++r)
    if (!errors[r].empty()) throw std::runtime_error("run " + std::to_string(r) + ": " + errors[r]);
  return out;
}

Summary aggregate(const std::vector<RunMetrics>& runs) {
  if (runs.empty()) throw std::invalid_argument("aggregate of zero runs");
  Summary s;
  s.runs = static_cast<int>(runs.size());
  std::vector<double> tput, sinr, tx;
  const double n = static_cast<double>(runs.size());
  for (const auto& r : runs) {
    tput.insert(tput.end(), r.ue_throughputs_bps.begin(), r.ue_throughputs_bps.end());
    sinr.insert(sinr.end(), r.sinr_samples_db.begin(), r.sinr_samples_db.end());
    tx.insert(tx.end(), r.site_tx_power_dbm.begin(), r.site_tx_power_dbm.end());
    s.active_sites_per_km2 += r.active_sites_per_km2 / n;
    s.mean_ues_per_active_site += r.mean_ues_per_active_site / n;
    s.network_tx_power_dbm_per_km2 += r.network_tx_power_dbm_per_km2 / n;
    s.ee_bps_per_w += r.ee_bps_per_w / n;
    for (std::size_t k = 0; k < 5; ++k) s.ee_by_sleep_model[k] += r.ee_by_sleep_model[k] / n;
    s.coverage_hole_fraction += r.coverage_hole_fraction / n;
  }
  if (runs.size() == 1) {
    // Keep single-run scalars bit-exact.
    const auto& r = runs.front();
    s.active_sites_per_km2 = r.active_sites_per_km2;
    s.mean_ues_per_active_site = r.mean_ues_per_active_site;
    s.network_tx_power_dbm_per_km2 = r.network_tx_power_dbm_per_km2;
    s.ee_bps_per_w = r.ee_bps_per_w;
    s.ee_by_sleep_model = r.ee_by_sleep_model;
    s.coverage_hole_fraction = r.coverage_hole_fraction;
  }
  s.n_ue_samples = tput.size();
  if (!tput.empty()) {
    s.mean_ue_tput_bps = mean(tput);  // before sorting: same fold order as a single run
    std::sort(tput.begin(), tput.end());
    s.p5_ue_tput_bps = percentile_sorted(tput, 0.05);
    s.p50_ue_tput_bps = percentile_sorted(tput, 0.5);
  } else {
    s.mean_ue_tput_bps = s.p5_ue_tput_bps = s.p50_ue_tput_bps = kNaN;
  }
  if (!sinr.empty()) {
    s.median_sinr_db = percentile(sinr, 0.5);
    s.mean_sinr_db = mean(sinr);
  } else {
    s.median_sinr_db = s.mean_sinr_db = kNaN;
  }
  s.tx_power_per_site_dbm = tx.empty() ? kNaN : mean(tx);

  double hi = 80.0;
  for (double x : sinr) hi = std::max(hi, std::ceil(x));
  for (double g = -20.0; g <= hi + 1e-9; g += 1.0) s.sinr_cdf_grid_db.push_back(g);
  s.sinr_cdf = empirical_cdf(sinr, s.sinr_cdf_grid_db);
  return s;
}

SweepSpec SweepSpec::parse(const std::string& text, const ScenarioConfig& base) {
  SweepSpec spec;
  spec.base = base;
  for (const auto& [key, value] : parse_key_values(text)) {
    std::vector<std::string> values;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
      auto b = item.find_first_not_of(" \t");
      auto e = item.find_last_not_of(" \t");
      if (b != std::string::npos) values.push_back(item.substr(b, e - b + 1));
    }
    if (values.empty()) throw std::invalid_argument("sweep key '" + key + "' has no values");
    ScenarioConfig probe = spec.base;
    for (const auto& v : values)
      if (!apply_setting(probe, key, v)) throw std::invalid_argument("unknown sweep key '" + key + "'");
    if (values.size() == 1) apply_setting(spec.base, key, values.front());
    else spec.axes.emplace_back(key, values);
  }
  return spec;
}

SweepSpec SweepSpec::from_file(const std::string& path, const ScenarioConfig& base) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open sweep file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), base);
}

std::size_t SweepSpec::point_count() const {
  std::size_t n = 1;
  for (const auto& a : axes) n *= a.second.size();
  return n;
}

ScenarioConfig SweepSpec::point(std::size_t index) const {
  if (index >= point_count()) throw std::out_of_range("sweep point index");
  ScenarioConfig cfg = base;
  std::size_t rest = index;
  for (auto it = axes.rbegin(); it != axes.rend(); ++it) {
    const auto& [key, values] = *it;
    apply_setting(cfg, key, values[rest % values.size()]);
    rest /= values.size();
  }
  cfg.seed = derive_seed({base.seed, static_cast<std::uint64_t>(index)});
  return cfg;
}

std::vector<EeRow> run_ee_study(const ScenarioConfig& base, const std::vector<double>& isds,
                                const std::vector<int>& antennas) {
  std::vector<EeRow> rows;
  for (double isd : isds) {
    for (int a : antennas) {
      ScenarioConfig cfg = base;
      cfg.isd_m = isd;
      cfg.num_bs_antennas = a;
      PowerTable::standard().row(isd, a);
      const Summary s = aggregate(execute_runs(cfg));
      for (int k = 1; k <= 5; ++k)
        rows.push_back(EeRow{isd, a, static_cast<SleepModel>(k), s.ee_by_sleep_model[static_cast<std::size_t>(k - 1)]});
    }
  }
  return rows;
}

void write_audit_block(std::ostream& os, const ScenarioConfig& cfg, const std::string& kind) {
  os << "# udnsim " << kind << "\n";
  for (const auto& [k, v] : audit_parameters(cfg)) os << "# " << k << " = " << v << "\n";
}

namespace {

const char* kConfigColumns = "isd,ue_density,ue_dist,idle,sleep_model,carrier_ghz,bandwidth_hz,antennas,target_snr_db,runs,seed";

std::string config_columns(const ScenarioConfig& c) {
  std::ostringstream os;
  os << num(c.isd_m) << ',' << num(c.ue_density_per_km2) << ','
     << (c.ue_distribution == UeDistribution::uniform ? "uniform" : "hotspot") << ','
     << (c.idle_mode_enabled ? "on" : "off") << ',' << static_cast<int>(c.sleep_model) << ',' << num(c.carrier_ghz)
     << ',' << num(c.bandwidth_hz()) << ',' << c.num_bs_antennas << ',' << num(c.target_edge_snr_db) << ','
     << c.runs << ',' << c.seed;
  return os.str();
}

}  // namespace

void write_summary_csv(std::ostream& os, const std::vector<std::pair<ScenarioConfig, Summary>>& points) {
  if (!points.empty()) write_audit_block(os, points.front().first, "summary");
  os << kConfigColumns
     << ",n_ue_samples,mean_ue_tput_bps,p5_ue_tput_bps,p50_ue_tput_bps,median_sinr_db,mean_sinr_db,"
        "active_sites_per_km2,mean_ues_per_active_site,tx_power_per_site_dbm,network_tx_power_dbm_per_km2,"
        "ee_bps_per_w,coverage_hole_fraction\n";
  for (const auto& [cfg, s] : points) {
    os << config_columns(cfg) << ',' << s.n_ue_samples << ',' << num(s.mean_ue_tput_bps) << ','
       << num(s.p5_ue_tput_bps) << ',' << num(s.p50_ue_tput_bps) << ',' << num(s.median_sinr_db) << ','
       << num(s.mean_sinr_db) << ',' << num(s.active_sites_per_km2) << ',' << num(s.mean_ues_per_active_site) << ','
       << num(s.tx_power_per_site_dbm) << ',' << num(s.network_tx_power_dbm_per_km2) << ',' << num(s.ee_bps_per_w)
       << ',' << num(s.coverage_hole_fraction) << '\n';
  }
}

void write_sinr_cdf_csv(std::ostream& os, const std::vector<std::pair<ScenarioConfig, Summary>>& points) {
  if (!points.empty()) write_audit_block(os, points.front().first, "sinr_cdf");
  os << kConfigColumns << ",sinr_db,cdf\n";
  for (const auto& [cfg, s] : points) {
    const auto cols = config_columns(cfg);
    for (std::size_t i = 0; i < s.sinr_cdf_grid_db.size(); ++i)
      os << cols << ',' << num(s.sinr_cdf_grid_db[i]) << ',' << num(s.sinr_cdf[i]) << '\n';
  }
}

void write_sched_csv(std::ostream& os, const ScenarioConfig& cfg, const std::vector<SchedRow>& rows) {
  write_audit_block(os, cfg, "sched");
  os << "isd,scheduler,ues_per_bs,mean_cell_tput_bps,p5_ue_tput_bps,p50_ue_tput_bps,p95_ue_tput_bps\n";
  for (const auto& r : rows)
    os << num(r.isd_m) << ',' << to_string(r.kind) << ',' << r.ues_per_bs << ',' << num(r.mean_cell_tput_bps) << ','
       << num(r.p5_ue_tput_bps) << ',' << num(r.p50_ue_tput_bps) << ',' << num(r.p95_ue_tput_bps) << '\n';
}

void write_ee_csv(std::ostream& os, const ScenarioConfig& cfg, const std::vector<EeRow>& rows) {
  write_audit_block(os, cfg, "ee");
  os << "isd,antennas,sleep_model,mean_ee_bps_per_w\n";
  for (const auto& r : rows)
    os << num(r.isd_m) << ',' << r.n_antennas << ',' << static_cast<int>(r.sleep_model) << ','
       << num(r.mean_ee_bps_per_w) << '\n';
}

void write_deployment_csv(std::ostream& sites_os, std::ostream& ues_os, const Deployment& dep) {
  sites_os << "site_id,x,y,height,guard\n";
  for (const auto& s : dep.sites)
    sites_os << s.id << ',' << num(s.x_m) << ',' << num(s.y_m) << ',' << num(s.height_m) << ','
             << (s.in_guard_tier ? 1 : 0) << '\n';
  ues_os << "ue_id,x,y,hotspot_id\n";
  for (const auto& u : dep.ues)
    ues_os << u.id << ',' << num(u.x_m) << ',' << num(u.y_m) << ',' << (u.hotspot_id ? std::to_string(*u.hotspot_id) : "")
           << '\n';
}

}  // namespace udn
