#pragma once

#include <array>
#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "udn/config.hpp"
#include "udn/scenario.hpp"
#include "udn/scheduler.hpp"

namespace udn {

// Per-run statistics. Lists hold only UEs served by non-guard sites;
// site aggregates count only non-guard sites.
struct RunMetrics {
  std::vector<double> sinr_samples_db;
  std::vector<double> ue_throughputs_bps;
  double active_sites_per_km2 = 0;
  double mean_ues_per_active_site = 0;
  std::vector<double> site_tx_power_dbm;  // per active site
  double network_tx_power_dbm_per_km2 = 0;
  double ee_bps_per_w = 0;                // for cfg.sleep_model; NaN without a power row
  std::array<double, 5> ee_by_sleep_model{};
  double coverage_hole_fraction = 0;

  int n_ues = 0;
  int n_holes = 0;
  int n_guard_served = 0;
  int n_active_sites = 0;
  int n_interior_sites = 0;

  bool operator==(const RunMetrics&) const = default;
};

enum class KernelMode { serial, parallel };

// One Monte-Carlo run; deterministic given (cfg.seed, run_index).
RunMetrics execute_run(const ScenarioConfig& cfg, int run_index, KernelMode mode = KernelMode::parallel);

// cfg.runs runs; runs execute concurrently, results in run order.
std::vector<RunMetrics> execute_runs(const ScenarioConfig& cfg);

// The deployment used by run `run_index` (sites + UEs + hotspots).
Deployment build_run_deployment(const ScenarioConfig& cfg, int run_index);

struct Summary {
  int runs = 0;
  std::size_t n_ue_samples = 0;
  double mean_ue_tput_bps = 0;
  double p5_ue_tput_bps = 0;
  double p50_ue_tput_bps = 0;
  double median_sinr_db = 0;
  double mean_sinr_db = 0;
  double active_sites_per_km2 = 0;
  double mean_ues_per_active_site = 0;
  double tx_power_per_site_dbm = 0;
  double network_tx_power_dbm_per_km2 = 0;
  double ee_bps_per_w = 0;
  std::array<double, 5> ee_by_sleep_model{};
  double coverage_hole_fraction = 0;
  std::vector<double> sinr_cdf_grid_db;
  std::vector<double> sinr_cdf;
};

// Pools UE samples across runs; per-run scalars are averaged.
Summary aggregate(const std::vector<RunMetrics>& runs);

// Cross product of axis values over a base configuration.
struct SweepSpec {
  ScenarioConfig base;
  std::vector<std::pair<std::string, std::vector<std::string>>> axes;

  static SweepSpec parse(const std::string& text, const ScenarioConfig& base = {});
  static SweepSpec from_file(const std::string& path, const ScenarioConfig& base = {});
  std::size_t point_count() const;
  // Config of point i; its seed is derive_seed(master seed, i).
  ScenarioConfig point(std::size_t index) const;
};

struct EeRow {
  double isd_m;
  int n_antennas;
  SleepModel sleep_model;
  double mean_ee_bps_per_w;
};

// Energy-efficiency study at 20 MHz across ISDs, antenna counts and all
// sleep models; each (isd, antennas) point reuses its runs for every model.
std::vector<EeRow> run_ee_study(const ScenarioConfig& base, const std::vector<double>& isds,
                                const std::vector<int>& antennas);

// CSV emitters. Each file starts with a `#`-prefixed audit block.
void write_audit_block(std::ostream& os, const ScenarioConfig& cfg, const std::string& kind);
void write_summary_csv(std::ostream& os, const std::vector<std::pair<ScenarioConfig, Summary>>& points);
void write_sinr_cdf_csv(std::ostream& os, const std::vector<std::pair<ScenarioConfig, Summary>>& points);
void write_sched_csv(std::ostream& os, const ScenarioConfig& cfg, const std::vector<SchedRow>& rows);
void write_ee_csv(std::ostream& os, const ScenarioConfig& cfg, const std::vector<EeRow>& rows);
void write_deployment_csv(std::ostream& sites_os, std::ostream& ues_os, const Deployment& dep);

// Command-line entry point; returns the process exit code.
int cli_main(int argc, char** argv);

}  // namespace udn
