#include "udn/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace udn {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw std::invalid_argument("invalid numeric value for " + key + ": '" + v + "'");
  }
}

int to_int(const std::string& key, const std::string& v) {
  double x = to_double(key, v);
  if (x != std::floor(x)) throw std::invalid_argument("expected integer for " + key + ": '" + v + "'");
  return static_cast<int>(x);
}

bool to_bool(const std::string& key, const std::string& v) {
  auto s = lower(v);
  if (s == "on" || s == "1" || s == "true" || s == "yes") return true;
  if (s == "off" || s == "0" || s == "false" || s == "no") return false;
  throw std::invalid_argument("expected on/off for " + key + ": '" + v + "'");
}

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(10) << x;
  return os.str();
}

}  // namespace

std::vector<std::string> validate(const ScenarioConfig& cfg) {
  std::vector<std::string> notes;
  if (!(cfg.isd_m > 0)) throw std::invalid_argument("isd must be positive");
  if (!(cfg.ue_density_per_km2 > 0)) throw std::invalid_argument("ue density must be positive");
  if (!(cfg.region_side_m > 0)) throw std::invalid_argument("region side must be positive");
  if (!(cfg.carrier_ghz > 0)) throw std::invalid_argument("carrier frequency must be positive");
  if (!(cfg.bandwidth_hz() > 0)) throw std::invalid_argument("bandwidth must be positive");
  if (cfg.num_bs_antennas != 1 && cfg.num_bs_antennas != 2 && cfg.num_bs_antennas != 4)
    throw std::invalid_argument("antennas must be 1, 2 or 4");
  if (cfg.runs < 1) throw std::invalid_argument("runs must be >= 1");
  if (cfg.guard_tiers < 0) throw std::invalid_argument("guard tiers must be >= 0");
  if (cfg.shadow_inter_site_correlation < 0 || cfg.shadow_inter_site_correlation > 1)
    throw std::invalid_argument("shadow inter-site correlation must lie in [0,1]");
  if (!(cfg.shadow_decorrelation_m > 0)) throw std::invalid_argument("decorrelation distance must be positive");
  if (!(cfg.los_smoothing_end_m > cfg.los_smoothing_start_m))
    throw std::invalid_argument("LOS smoothing window must have positive width");
  if (cfg.hotspot_size < 1) throw std::invalid_argument("hotspot size must be >= 1");

  if (std::find(kStudyIsdsM.begin(), kStudyIsdsM.end(), cfg.isd_m) == kStudyIsdsM.end())
    notes.push_back("isd " + fmt(cfg.isd_m) + " m is outside the studied set; no power-model row exists");
  auto t = cfg.target_edge_snr_db;
  if (t != 9 && t != 12 && t != 15) notes.push_back("edge SNR target " + fmt(t) + " dB is outside {9,12,15}");
  return notes;
}

std::string to_string(UeDistribution d) { return d == UeDistribution::uniform ? "uniform" : "nonuniform"; }

std::string to_string(SleepModel sm) { return "sm" + std::to_string(static_cast<int>(sm)); }

std::string to_string(EdgeConvention e) {
  return e == EdgeConvention::sqrt3_over_2_isd ? "sqrt3_over_2" : "isd_over_sqrt3";
}

std::string normalize_key(const std::string& key) {
  std::string out;
  for (unsigned char c : key)
    if (c != '-' && c != '_') out.push_back(static_cast<char>(std::tolower(c)));
  return out;
}

KeyValues parse_key_values(const std::string& text) {
  KeyValues kv;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("line " + std::to_string(lineno) + ": expected 'key = value'");
    auto key = trim(line.substr(0, eq));
    auto value = trim(line.substr(eq + 1));
    if (key.empty()) throw std::invalid_argument("line " + std::to_string(lineno) + ": empty key");
    kv.emplace_back(key, value);
  }
  return kv;
}

KeyValues read_key_value_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_key_values(ss.str());
}

bool apply_setting(ScenarioConfig& cfg, const std::string& raw_key, const std::string& value) {
  const auto key = normalize_key(raw_key);
  if (key == "isd") cfg.isd_m = to_double(raw_key, value);
  else if (key == "uedensity") cfg.ue_density_per_km2 = to_double(raw_key, value);
  else if (key == "uedist") {
    auto v = lower(value);
    if (v == "uniform" || v == "0") cfg.ue_distribution = UeDistribution::uniform;
    else if (v == "hotspot" || v == "nonuniform" || v == "1") cfg.ue_distribution = UeDistribution::nonuniform;
    else throw std::invalid_argument("ue-dist must be uniform or hotspot: '" + value + "'");
  } else if (key == "idle") cfg.idle_mode_enabled = to_bool(raw_key, value);
  else if (key == "sleepmodel") {
    int sm = to_int(raw_key, value);
    if (sm < 1 || sm > 5) throw std::invalid_argument("sleep-model must be 1..5");
    cfg.sleep_model = static_cast<SleepModel>(sm);
  } else if (key == "carrierghz") cfg.carrier_ghz = to_double(raw_key, value);
  else if (key == "bandwidthhz") cfg.bandwidth_override_hz = to_double(raw_key, value);
  else if (key == "antennas") cfg.num_bs_antennas = to_int(raw_key, value);
  else if (key == "targetsnrdb") cfg.target_edge_snr_db = to_double(raw_key, value);
  else if (key == "runs") cfg.runs = to_int(raw_key, value);
  else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(std::stoull(value));
  else if (key == "regionsidem") cfg.region_side_m = to_double(raw_key, value);
  else if (key == "guardtiers") cfg.guard_tiers = to_int(raw_key, value);
  else if (key == "ueheightm") cfg.ue_height_m = to_double(raw_key, value);
  else if (key == "shadowsigmadb") cfg.shadow_sigma_db = to_double(raw_key, value);
  else if (key == "shadowcorrelation") cfg.shadow_inter_site_correlation = to_double(raw_key, value);
  else if (key == "shadowdecorrelationm") cfg.shadow_decorrelation_m = to_double(raw_key, value);
  else if (key == "lossmoothingstartm") cfg.los_smoothing_start_m = to_double(raw_key, value);
  else if (key == "lossmoothingendm") cfg.los_smoothing_end_m = to_double(raw_key, value);
  else if (key == "noisefiguredb") cfg.ue_noise_figure_db = to_double(raw_key, value);
  else if (key == "edge") {
    auto v = lower(value);
    if (v == "sqrt3_over_2" || v == "verbatim") cfg.edge_convention = EdgeConvention::sqrt3_over_2_isd;
    else if (v == "isd_over_sqrt3" || v == "radius") cfg.edge_convention = EdgeConvention::isd_over_sqrt3;
    else throw std::invalid_argument("edge must be sqrt3_over_2 or isd_over_sqrt3");
  } else if (key == "calibrationantennagain") cfg.calibration_includes_antenna_gain = to_bool(raw_key, value);
  else if (key == "kfactorfloor") cfg.k_factor_floor = to_double(raw_key, value);
  else if (key == "kfactorfitdistancem") cfg.k_factor_fit_distance_m = to_double(raw_key, value);
  else return false;
  return true;
}

std::vector<std::pair<std::string, std::string>> audit_parameters(const ScenarioConfig& c) {
  return {
      {"region_side_m", fmt(c.region_side_m)},
      {"guard_tiers", std::to_string(c.guard_tiers)},
      {"bs_height_rule", "6m*isd/50 clamped [3,24]"},
      {"ue_height_m", fmt(c.ue_height_m)},
      {"ue_exclusion_radius_m", fmt(c.ue_exclusion_radius_m)},
      {"hotspot_radius_m", fmt(c.hotspot_radius_m)},
      {"hotspot_size", std::to_string(c.hotspot_size)},
      {"hotspot_min_separation_m", fmt(c.hotspot_min_separation_m)},
      {"umi_los_db", "22.0*log10(d)+28.0+20*log10(f_ghz)"},
      {"umi_nlos_db", "36.7*log10(d)+22.7+26*log10(f_ghz)"},
      {"los_smoothing_window_m", fmt(c.los_smoothing_start_m) + ".." + fmt(c.los_smoothing_end_m)},
      {"shadow_sigma_db", fmt(c.shadow_sigma_db)},
      {"shadow_inter_site_correlation", fmt(c.shadow_inter_site_correlation)},
      {"shadow_decorrelation_m", fmt(c.shadow_decorrelation_m)},
      {"noise_psd_dbm_hz", fmt(c.noise_psd_dbm_hz)},
      {"ue_noise_figure_db", fmt(c.ue_noise_figure_db)},
      {"pilot_sinr_floor_db", fmt(c.pilot_sinr_floor_db)},
      {"shannon_backoff_db", fmt(c.shannon_backoff_db)},
      {"edge_convention", to_string(c.edge_convention)},
      {"calibration_includes_antenna_gain", c.calibration_includes_antenna_gain ? "on" : "off"},
      {"antenna_pattern_floor_db", "-40"},
      {"k_factor_los", fmt(c.k_factor_los)},
      {"k_factor_floor", fmt(c.k_factor_floor)},
      {"k_factor_fit_distance_m", fmt(c.k_factor_fit_distance_m)},
      {"percentile_rule", "linear interpolation between order statistics, h=(n-1)p"},
      {"seed_mix", "splitmix64 fold over (seed, stream, index)"},
      {"master_seed", std::to_string(c.seed)},
  };
}

}  // namespace udn
