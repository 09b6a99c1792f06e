#include "udn/link.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace udn {

RadioConstants RadioConstants::from_config(const ScenarioConfig& cfg) {
  RadioConstants rc;
  rc.noise_psd_dbm_hz = cfg.noise_psd_dbm_hz;
  rc.ue_noise_figure_db = cfg.ue_noise_figure_db;
  rc.pilot_sinr_floor_db = cfg.pilot_sinr_floor_db;
  rc.shannon_backoff_db = cfg.shannon_backoff_db;
  rc.bandwidth_hz = cfg.bandwidth_hz();
  return rc;
}

double RadioConstants::noise_power_dbm() const {
  return noise_psd_dbm_hz + 10.0 * std::log10(bandwidth_hz) + ue_noise_figure_db;
}

double RadioConstants::noise_power_mw() const { return db_to_linear(noise_power_dbm()); }

double calibration_edge_distance_m(double isd_m, EdgeConvention convention) {
  return convention == EdgeConvention::sqrt3_over_2_isd ? isd_m * std::numbers::sqrt3 / 2.0
                                                        : isd_m / std::numbers::sqrt3;
}

LinkGeometry link_geometry(double r, double site_h, double ue_h) {
  const double dh = site_h - ue_h;
  return {std::hypot(r, dh), std::atan2(dh, r)};
}

double calibrate_tx_power_dbm(const Site& site, const ScenarioConfig& cfg, const PathGainModel& model,
                              const DipoleArrayConfig& antenna) {
  const auto rc = RadioConstants::from_config(cfg);
  const double edge = calibration_edge_distance_m(cfg.isd_m, cfg.edge_convention);
  const auto geo = link_geometry(edge, site.height_m, cfg.ue_height_m);
  double p = rc.noise_power_dbm() - path_gain_db(geo.distance_3d_m, model) + cfg.target_edge_snr_db;
  if (cfg.calibration_includes_antenna_gain) p -= column_gain_db(0.0, geo.depression_rad, antenna);
  return p;
}

std::size_t AssociationState::active_count() const {
  std::size_t n = 0;
  for (char a : active) n += a ? 1 : 0;
  return n;
}

double sinr_db(std::size_t ue, int serving, const RxPowerMatrix& rx, const std::vector<char>& tx, double noise_mw) {
  double signal = 0, interference = 0;
  for (std::size_t s = 0; s < rx.n_sites; ++s) {
    const double p = rx.at(s, ue);
    if (static_cast<int>(s) == serving) signal = p;
    else if (tx[s]) interference += p;
  }
  return linear_to_db(signal / (interference + noise_mw));
}

AssociationState associate(const RxPowerMatrix& rx, bool idle_mode, const RadioConstants& rc) {
  AssociationState st;
  st.serving.assign(rx.n_ues, -1);
  st.hole.assign(rx.n_ues, 0);
  st.pilot_sinr_db.assign(rx.n_ues, -std::numeric_limits<double>::infinity());
  st.active.assign(rx.n_sites, idle_mode ? 0 : 1);
  st.ues_per_site.assign(rx.n_sites, 0);

  for (std::size_t u = 0; u < rx.n_ues; ++u) {
    int best = -1;
    double best_p = -1;
    for (std::size_t s = 0; s < rx.n_sites; ++s) {
      const double p = rx.at(s, u);
      if (p > best_p) {
        best_p = p;
        best = static_cast<int>(s);
      }
    }
    st.serving[u] = best;
    if (idle_mode && best >= 0) st.active[static_cast<std::size_t>(best)] = 1;
  }

  // Argmax over all sites is always an associated (hence active) site, so
  // re-associating against the active set changes nothing.
  const double noise = rc.noise_power_mw();
  for (std::size_t u = 0; u < rx.n_ues; ++u) {
    st.pilot_sinr_db[u] = sinr_db(u, st.serving[u], rx, st.active, noise);
    st.hole[u] = st.pilot_sinr_db[u] < rc.pilot_sinr_floor_db ? 1 : 0;
    if (!st.hole[u]) ++st.ues_per_site[static_cast<std::size_t>(st.serving[u])];
  }
  if (idle_mode)
    for (std::size_t s = 0; s < rx.n_sites; ++s) st.active[s] = st.ues_per_site[s] > 0 ? 1 : 0;
  return st;
}

double ue_throughput_bps(double sinr, int n, double bandwidth, double backoff) {
  if (n < 1) throw std::invalid_argument("cell must serve at least one UE");
  return bandwidth * std::log2(1.0 + db_to_linear(sinr - backoff)) / n;
}

}  // namespace udn
