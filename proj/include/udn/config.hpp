#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace udn {

enum class UeDistribution { uniform, nonuniform };
enum class SleepModel { sm1 = 1, sm2, sm3, sm4, sm5 };

// Where the transmit power calibration point sits relative to the site.
enum class EdgeConvention {
  sqrt3_over_2_isd,  // literal: sqrt(3)/2 * isd
  isd_over_sqrt3,    // hexagon circumradius
};

// ISDs used throughout the study; other positive values are accepted with a note.
inline const std::vector<double> kStudyIsdsM{200, 150, 100, 75, 50, 35, 20, 10, 5};

// Full description of one experiment point. Field names mirror the figure
// legend convention (i, d, ud, s, sm, f, a, t).
struct ScenarioConfig {
  double isd_m = 200.0;
  double ue_density_per_km2 = 300.0;
  UeDistribution ue_distribution = UeDistribution::nonuniform;
  bool idle_mode_enabled = true;
  SleepModel sleep_model = SleepModel::sm1;
  double carrier_ghz = 2.0;
  std::optional<double> bandwidth_override_hz;
  int num_bs_antennas = 1;
  double target_edge_snr_db = 12.0;
  double region_side_m = 500.0;
  int runs = 150;
  std::uint64_t seed = 1;

  // Deployment
  int guard_tiers = 2;
  double ue_height_m = 1.5;
  double ue_exclusion_radius_m = 0.5;
  double hotspot_radius_m = 40.0;
  int hotspot_size = 20;
  double hotspot_min_separation_m = 40.0;

  // Propagation
  double shadow_sigma_db = 6.0;
  double shadow_inter_site_correlation = 0.5;
  double shadow_decorrelation_m = 20.0;
  double los_smoothing_start_m = 18.0;
  double los_smoothing_end_m = 22.0;

  // Link
  double noise_psd_dbm_hz = -174.0;
  double ue_noise_figure_db = 9.0;
  double pilot_sinr_floor_db = -6.5;
  double shannon_backoff_db = 3.5;
  EdgeConvention edge_convention = EdgeConvention::sqrt3_over_2_isd;
  bool calibration_includes_antenna_gain = false;  // true subtracts G_A(edge)

  // Fast fading (scheduler study only)
  double k_factor_los = 32.0;
  double k_factor_floor = 0.1;
  double k_factor_fit_distance_m = 36.0;

  double bandwidth_hz() const {
    return bandwidth_override_hz ? *bandwidth_override_hz : 0.05 * carrier_ghz * 1e9;
  }
  double region_area_km2() const { return region_side_m * region_side_m * 1e-6; }
};

// Throws std::invalid_argument on hard errors; returns advisory notes
// (e.g. an ISD outside the studied set).
std::vector<std::string> validate(const ScenarioConfig& cfg);

std::string to_string(UeDistribution d);
std::string to_string(SleepModel sm);
std::string to_string(EdgeConvention e);

// `key = value` text. Keys are flag names; dashes, underscores and case are
// ignored when matching ("ue-density", "ue_density" and "uedensity" agree).
using KeyValues = std::vector<std::pair<std::string, std::string>>;
KeyValues parse_key_values(const std::string& text);
KeyValues read_key_value_file(const std::string& path);
std::string normalize_key(const std::string& key);

// Applies one key to cfg. Returns false if the key is unknown.
bool apply_setting(ScenarioConfig& cfg, const std::string& key, const std::string& value);

// Every constant and design parameter as ordered (name, value) pairs for
// CSV audit headers.
std::vector<std::pair<std::string, std::string>> audit_parameters(const ScenarioConfig& cfg);

}  // namespace udn
