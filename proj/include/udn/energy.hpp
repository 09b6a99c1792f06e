#pragma once

#include <span>
#include <vector>

#include "udn/config.hpp"

namespace udn {

// One row of the small-cell power model (2020 small-cell BS, 20 MHz).
struct PowerRow {
  double isd_m;
  int n_antennas;
  double tx_power_dbm;
  double full_load_w;
  double idle1_w;  // slow idle
  double idle2_w;  // shut-down
};

class PowerTable {
 public:
  static const PowerTable& standard();

  const std::vector<PowerRow>& rows() const { return rows_; }
  // Throws std::out_of_range("no power-model row") when absent.
  const PowerRow& row(double isd_m, int n_antennas) const;
  bool has_row(double isd_m, int n_antennas) const;

 private:
  explicit PowerTable(std::vector<PowerRow> rows) : rows_(std::move(rows)) {}
  std::vector<PowerRow> rows_;
};

// Idle-state draw per sleep model: sm1 slow idle, sm2 shut-down, sm3/sm4
// 30 % / 15 % of slow idle, sm5 zero.
double idle_power_w(const PowerRow& row, SleepModel sm);

enum class SiteState { active, idle };

// Active: idle1 + (full - idle1) * load; idle: sleep-model draw.
double site_power_w(SiteState state, const PowerRow& row, SleepModel sm, double load_fraction = 1.0);

// Sum of served throughput over the summed draw of every counted site.
struct SiteEnergyState {
  SiteState state;
  double load_fraction;
};
double network_energy_efficiency_bps_per_w(std::span<const double> served_tput_bps,
                                            std::span<const SiteEnergyState> sites, const PowerRow& row,
                                            SleepModel sm);

}  // namespace udn
