#include "udn/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "udn/fastfading.hpp"
#include "udn/kernels.hpp"
#include "udn/link.hpp"
#include "udn/propagation.hpp"
#include "udn/rng.hpp"
#include "udn/scenario.hpp"
#include "udn/stats.hpp"

namespace udn {

RbGrid RbGrid::from_bandwidth(double bandwidth_hz) {
  RbGrid g;
  g.n_rbs = static_cast<int>(std::floor(bandwidth_hz / g.rb_bandwidth_hz));
  if (g.n_rbs < 1) throw std::invalid_argument("bandwidth below one resource block");
  return g;
}

RbAllocation schedule_rr(int n_ues, const RbGrid& grid, std::uint64_t tti) {
  if (n_ues < 1) throw std::invalid_argument("round robin needs at least one UE");
  RbAllocation a(static_cast<std::size_t>(grid.n_rbs));
  const std::uint64_t n = static_cast<std::uint64_t>(n_ues);
  const std::uint64_t base = (tti % n) * (static_cast<std::uint64_t>(grid.n_rbs) % n);
  for (int k = 0; k < grid.n_rbs; ++k) a[static_cast<std::size_t>(k)] = static_cast<int>((base + k) % n);
  return a;
}

void PfState::update(std::span<const double> served) {
  if (!initialized) {
    avg_rate_bps.assign(served.begin(), served.end());
    initialized = true;
    return;
  }
  const double a = 1.0 / window_ttis;
  for (std::size_t u = 0; u < served.size(); ++u) avg_rate_bps[u] = (1.0 - a) * avg_rate_bps[u] + a * served[u];
}

std::vector<int> pf_td_select(PfState& state, std::span<const double> est) {
  if (!state.initialized) state.update(est);
  std::vector<int> order(est.size());
  std::iota(order.begin(), order.end(), 0);
  auto metric = [&](int u) {
    const double r = state.avg_rate_bps[static_cast<std::size_t>(u)];
    return r > 0 ? est[static_cast<std::size_t>(u)] / r : std::numeric_limits<double>::infinity();
  };
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return metric(a) > metric(b); });
  if (static_cast<int>(order.size()) > state.n_max) order.resize(static_cast<std::size_t>(state.n_max));
  return order;
}

RbAllocation pf_fd_allocate(std::span<const int> selected, std::span<const double> sinr, const RbGrid& grid) {
  if (selected.empty()) throw std::invalid_argument("frequency-domain stage needs at least one UE");
  const auto k_rbs = static_cast<std::size_t>(grid.n_rbs);
  std::vector<double> total(selected.size(), 0.0);
  for (std::size_t i = 0; i < selected.size(); ++i) {
    const double* row = sinr.data() + static_cast<std::size_t>(selected[i]) * k_rbs;
    for (std::size_t k = 0; k < k_rbs; ++k) total[i] += row[k];
  }
  RbAllocation a(k_rbs);
  for (std::size_t k = 0; k < k_rbs; ++k) {
    int best = -1;
    double best_m = -1;
    for (std::size_t i = 0; i < selected.size(); ++i) {
      const int u = selected[i];
      const double m = sinr[static_cast<std::size_t>(u) * k_rbs + k] / total[i];
      if (m > best_m || (m == best_m && u < best)) {
        best_m = m;
        best = u;
      }
    }
    a[k] = best;
  }
  return a;
}

std::string to_string(SchedulerKind k) { return k == SchedulerKind::round_robin ? "RR" : "PF"; }

namespace {

double rb_rate_bps(double sinr_linear, const RbGrid& g, double backoff_linear) {
  return g.rb_bandwidth_hz * std::log2(1.0 + sinr_linear / backoff_linear);
}

// Bits delivered to each UE of one cell over the simulated TTIs. `gains`
// holds |h|^2 as [ue][tti][rb]; `wideband` the per-UE linear SINR.
struct CellOutcome {
  std::vector<double> rr_bps;
  std::vector<double> pf_bps;
};

CellOutcome simulate_cell(std::span<const double> wideband, std::span<const double> gains, const RbGrid& grid,
                          int ttis, double backoff) {
  const std::size_t n = wideband.size();
  const auto k_rbs = static_cast<std::size_t>(grid.n_rbs);
  const std::size_t stride = static_cast<std::size_t>(ttis) * k_rbs;
  std::vector<double> sinr(n * k_rbs), bits_rr(n, 0.0), bits_pf(n, 0.0), est(n), served(n);
  PfState pf;
  for (int t = 0; t < ttis; ++t) {
    for (std::size_t i = 0; i < n; ++i) {
      const double* g = gains.data() + i * stride + static_cast<std::size_t>(t) * k_rbs;
      double sum = 0;
      for (std::size_t k = 0; k < k_rbs; ++k) {
        sinr[i * k_rbs + k] = wideband[i] * g[k];
        sum += sinr[i * k_rbs + k];
      }
      est[i] = static_cast<double>(k_rbs) * rb_rate_bps(sum / static_cast<double>(k_rbs), grid, backoff);
    }
    const auto rr = schedule_rr(static_cast<int>(n), grid, static_cast<std::uint64_t>(t));
    for (std::size_t k = 0; k < k_rbs; ++k) {
      const auto u = static_cast<std::size_t>(rr[k]);
      bits_rr[u] += rb_rate_bps(sinr[u * k_rbs + k], grid, backoff) * grid.tti_s;
    }
    const auto selected = pf_td_select(pf, est);
    const auto alloc = pf_fd_allocate(selected, sinr, grid);
    std::fill(served.begin(), served.end(), 0.0);
    for (std::size_t k = 0; k < k_rbs; ++k) {
      const auto u = static_cast<std::size_t>(alloc[k]);
      served[u] += rb_rate_bps(sinr[u * k_rbs + k], grid, backoff);
    }
    for (std::size_t i = 0; i < n; ++i) bits_pf[i] += served[i] * grid.tti_s;
    pf.update(served);
  }
  const double dur = ttis * grid.tti_s;
  CellOutcome out{bits_rr, bits_pf};
  for (auto& b : out.rr_bps) b /= dur;
  for (auto& b : out.pf_bps) b /= dur;
  return out;
}

}  // namespace

std::vector<SchedRow> run_scheduler_study(const ScenarioConfig& base, const SchedStudyOptions& opts) {
  if (opts.ues_per_bs.empty() || opts.isds_m.empty()) throw std::invalid_argument("empty scheduler study");
  std::vector<SchedRow> rows;
  const RbGrid grid = RbGrid::from_bandwidth(base.bandwidth_hz());
  const auto rc_base = RadioConstants::from_config(base);
  const double backoff = db_to_linear(base.shannon_backoff_db);
  const PathGainModel path = PathGainModel::from_config(base);
  const DipoleArrayConfig antenna;
  const KFactorModel kmodel = KFactorModel::from_config(base);

  // Every U splits the same per-cell pool of positions into groups of U, so
  // all U see identical positions and channels.
  std::size_t pool = 1;
  for (int u : opts.ues_per_bs) {
    if (u < 1) throw std::invalid_argument("UEs per cell must be >= 1");
    pool = std::lcm(pool, static_cast<std::size_t>(u));
  }
  const auto k_rbs = static_cast<std::size_t>(grid.n_rbs);
  const std::size_t stride = static_cast<std::size_t>(opts.ttis) * k_rbs;

  for (std::size_t ii = 0; ii < opts.isds_m.size(); ++ii) {
    ScenarioConfig cfg = base;
    cfg.isd_m = opts.isds_m[ii];
    const Deployment dep = build_hex_grid(cfg);
    const double c = cfg.region_side_m / 2.0;
    const HexLattice lattice(cfg.isd_m, c, c);

    std::vector<std::size_t> cells;
    for (const Site& s : dep.sites)
      if (!s.in_guard_tier && std::hypot(s.x_m - c, s.y_m - c) <= cfg.isd_m * 1.01)
        cells.push_back(static_cast<std::size_t>(s.id));

    std::vector<double> tx(dep.sites.size());
    for (std::size_t s = 0; s < dep.sites.size(); ++s) tx[s] = calibrate_tx_power_dbm(dep.sites[s], cfg, path, antenna);
    const double noise = rc_base.noise_power_mw();
    const double cell_radius = cfg.isd_m / std::numbers::sqrt3;

    std::vector<std::vector<double>> cell_rr(opts.ues_per_bs.size()), cell_pf(opts.ues_per_bs.size());
    std::vector<std::vector<double>> ue_rr(opts.ues_per_bs.size()), ue_pf(opts.ues_per_bs.size());

    for (int drop = 0; drop < opts.drops; ++drop) {
      const std::uint64_t drop_seed = derive_seed({cfg.seed, ii, static_cast<std::uint64_t>(drop)});

      // Uniform positions inside each cell's hexagon.
      std::vector<Ue> ues;
      for (std::size_t ci = 0; ci < cells.size(); ++ci) {
        const Site& site = dep.sites[cells[ci]];
        Rng rng = make_rng(drop_seed, Stream::sched_drop, ci);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        while (ues.size() < (ci + 1) * pool) {
          const double r = cell_radius * std::sqrt(unit(rng));
          const double a = 2.0 * std::numbers::pi * unit(rng);
          const double x = site.x_m + r * std::cos(a), y = site.y_m + r * std::sin(a);
          if (r < cfg.ue_exclusion_radius_m || lattice.nearest_distance(x, y) < r - 1e-9) continue;
          ues.push_back(Ue{static_cast<int>(ues.size()), x, y, std::nullopt});
        }
      }

      std::vector<double> xs, ys;
      for (const Ue& u : ues) {
        xs.push_back(u.x_m);
        ys.push_back(u.y_m);
      }
      ShadowField::Params sp{cfg.shadow_sigma_db, cfg.shadow_inter_site_correlation, cfg.shadow_decorrelation_m};
      ShadowField shadow(xs, ys, sp, drop_seed);
      kernels::GainInputs gin{dep.sites, ues, cfg.ue_height_m, &path, &antenna, &shadow};
      const auto gains = kernels::gain_matrix_serial(gin);
      const auto rx = kernels::rx_power_serial(gains, tx);

      for (std::size_t ci = 0; ci < cells.size(); ++ci) {
        const std::size_t site_idx = cells[ci];
        const Site& site = dep.sites[site_idx];
        // Full buffer everywhere: a UE's wideband SINR depends on its own
        // position only, so groups within a cell are independent samples.
        std::vector<double> wideband(pool), fading(pool * stride), row(k_rbs);
        for (std::size_t i = 0; i < pool; ++i) {
          const std::size_t u = ci * pool + i;
          double interference = 0;
          for (std::size_t s = 0; s < rx.n_sites; ++s)
            if (s != site_idx) interference += rx.at(s, u);
          wideband[i] = rx.at(site_idx, u) / (interference + noise);
          const double d3 = link_geometry(std::hypot(ues[u].x_m - site.x_m, ues[u].y_m - site.y_m), site.height_m,
                                          cfg.ue_height_m).distance_3d_m;
          Rng prng = make_rng(drop_seed, Stream::los_phase, u);
          const double phase = std::uniform_real_distribution<double>(0.0, 2.0 * std::numbers::pi)(prng);
          const RicianChannel ch(derive_seed({drop_seed, static_cast<std::uint64_t>(Stream::fading)}), kmodel(d3), phase);
          for (int t = 0; t < opts.ttis; ++t) {
            ch.power_gains(u, static_cast<std::uint64_t>(t), row);
            std::copy(row.begin(), row.end(), fading.begin() + static_cast<std::ptrdiff_t>(i * stride + t * k_rbs));
          }
        }

        for (std::size_t ui = 0; ui < opts.ues_per_bs.size(); ++ui) {
          const auto n = static_cast<std::size_t>(opts.ues_per_bs[ui]);
          for (std::size_t g = 0; g < pool / n; ++g) {
            const auto out = simulate_cell(std::span(wideband).subspan(g * n, n),
                                           std::span(fading).subspan(g * n * stride, n * stride), grid, opts.ttis,
                                           backoff);
            cell_rr[ui].push_back(std::accumulate(out.rr_bps.begin(), out.rr_bps.end(), 0.0));
            cell_pf[ui].push_back(std::accumulate(out.pf_bps.begin(), out.pf_bps.end(), 0.0));
            ue_rr[ui].insert(ue_rr[ui].end(), out.rr_bps.begin(), out.rr_bps.end());
            ue_pf[ui].insert(ue_pf[ui].end(), out.pf_bps.begin(), out.pf_bps.end());
          }
        }
      }
    }
    for (std::size_t ui = 0; ui < opts.ues_per_bs.size(); ++ui) {
      for (auto kind : {SchedulerKind::round_robin, SchedulerKind::proportional_fair}) {
        const bool is_rr = kind == SchedulerKind::round_robin;
        const auto& cell = is_rr ? cell_rr[ui] : cell_pf[ui];
        const auto& ue = is_rr ? ue_rr[ui] : ue_pf[ui];
        rows.push_back(SchedRow{cfg.isd_m, kind, opts.ues_per_bs[ui], mean(cell), percentile(ue, 0.05),
                                percentile(ue, 0.5), percentile(ue, 0.95), cell.size()});
      }
    }
  }
  return rows;
}

}  // namespace udn
