#pragma once

#include <cmath>
#include <vector>

#include "udn/antenna.hpp"
#include "udn/config.hpp"
#include "udn/propagation.hpp"
#include "udn/scenario.hpp"

namespace udn {

// Constants that every output file logs in its audit header.
struct RadioConstants {
  double noise_psd_dbm_hz = -174.0;
  double ue_noise_figure_db = 9.0;
  double pilot_sinr_floor_db = -6.5;
  double shannon_backoff_db = 3.5;
  double bandwidth_hz = 100e6;

  static RadioConstants from_config(const ScenarioConfig& cfg);
  double noise_power_dbm() const;
  double noise_power_mw() const;
};

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }

// Horizontal distance from a site to its calibration point.
double calibration_edge_distance_m(double isd_m, EdgeConvention convention);

// Depression angle (rad, positive below the horizon) and 3D distance from a
// site antenna to a UE at horizontal range `r`.
struct LinkGeometry {
  double distance_3d_m;
  double depression_rad;
};
LinkGeometry link_geometry(double horizontal_m, double site_height_m, double ue_height_m);

// P_tx = P_N - G_P(edge) + target [- G_A(edge) when antenna gain is compensated].
double calibrate_tx_power_dbm(const Site& site, const ScenarioConfig& cfg, const PathGainModel& model,
                              const DipoleArrayConfig& antenna = {});

struct AssociationState {
  std::vector<int> serving;          // per UE; -1 when unassociated
  std::vector<char> hole;            // per UE; pilot SINR below the floor
  std::vector<double> pilot_sinr_db; // per UE, against the transmitting set
  std::vector<char> active;          // per site
  std::vector<int> ues_per_site;     // served (non-hole) UEs per site

  bool is_served(std::size_t ue) const { return serving[ue] >= 0 && !hole[ue]; }
  std::size_t active_count() const;
};

// Received pilot power (mW) matrix, row-major [site][ue].
struct RxPowerMatrix {
  std::size_t n_sites = 0;
  std::size_t n_ues = 0;
  std::vector<double> mw;

  double at(std::size_t site, std::size_t ue) const { return mw[site * n_ues + ue]; }
};

// Strongest-pilot association with the -6.5 dB pilot SINR gate and idle mode.
//  1. every UE picks argmax received pilot (ties: lowest site id);
//  2. the transmitting set is every site (idle off) or every site with an
//     associated UE (idle on); pilot SINRs are evaluated against it;
//  3. UEs below the floor become coverage holes; with idle on, sites left
//     without served UEs are switched off.
AssociationState associate(const RxPowerMatrix& rx, bool idle_mode, const RadioConstants& rc);

// Linear-domain SINR of `ue` served by `serving` against transmitting sites.
double sinr_db(std::size_t ue, int serving, const RxPowerMatrix& rx, const std::vector<char>& transmitting,
               double noise_mw);

// B log2(1 + 10^((sinr - backoff)/10)) / n_ues_in_cell.
double ue_throughput_bps(double sinr_db, int n_ues_in_cell, double bandwidth_hz, double backoff_db = 3.5);

}  // namespace udn
