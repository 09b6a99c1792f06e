#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "udn/config.hpp"

namespace udn {

// LTE time/frequency resource grid.
struct RbGrid {
  double rb_bandwidth_hz = 180e3;
  double tti_s = 1e-3;
  int subcarriers_per_rb = 12;
  int n_rbs = 1;

  static RbGrid from_bandwidth(double bandwidth_hz);
};

// RB -> local UE index.
using RbAllocation = std::vector<int>;

// Cyclic round robin continuing across TTIs: RB k of TTI t goes to UE
// (t * n_rbs + k) mod n_ues.
RbAllocation schedule_rr(int n_ues, const RbGrid& grid, std::uint64_t tti);

// Time-domain PF state for one cell.
struct PfState {
  std::vector<double> avg_rate_bps;  // R, per UE
  double window_ttis = 100.0;
  int n_max = 10;
  bool initialized = false;

  // R <- (1 - 1/T) R + (1/T) served; first call seeds R with `served`.
  void update(std::span<const double> served_bps);
};

// Top-n_max UEs by D/R, ties to the lower index. Uninitialized state seeds R
// with the estimates themselves.
std::vector<int> pf_td_select(PfState& state, std::span<const double> estimates_bps);

// Each RB to argmax_u gamma[u,k] / sum_k gamma[u,k] over `selected` (linear
// SINR, row-major [ue][rb] with grid.n_rbs columns); ties to the lower index.
RbAllocation pf_fd_allocate(std::span<const int> selected, std::span<const double> per_rb_sinr, const RbGrid& grid);

enum class SchedulerKind { round_robin, proportional_fair };
std::string to_string(SchedulerKind k);

struct SchedStudyOptions {
  std::vector<double> isds_m{150, 40, 20};
  std::vector<int> ues_per_bs{1, 2, 4, 6, 8};
  int drops = 40;
  int ttis = 300;
};

struct SchedRow {
  double isd_m = 0;
  SchedulerKind kind = SchedulerKind::round_robin;
  int ues_per_bs = 0;
  double mean_cell_tput_bps = 0;
  double p5_ue_tput_bps = 0;
  double p50_ue_tput_bps = 0;
  double p95_ue_tput_bps = 0;
  std::size_t n_cells = 0;
};

// Full-buffer multi-cell study: every site transmits, the center cell and
// its six neighbours are sampled. Each cell drop holds lcm(U) positions in
// its hexagon, split into groups of U UEs, so every U and both schedulers
// see the same positions and channel realizations.
std::vector<SchedRow> run_scheduler_study(const ScenarioConfig& cfg, const SchedStudyOptions& opts);

}  // namespace udn
