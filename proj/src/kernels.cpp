#include "udn/kernels.hpp"

#include <cmath>
#include <limits>

namespace udn::kernels {

namespace {

void gain_row(const GainInputs& in, std::size_t s, std::vector<double>& shadow_buf, double* row) {
  const Site& site = in.sites[s];
  if (in.shadow) in.shadow->site_shadow_db(site.id, shadow_buf);
  for (std::size_t u = 0; u < in.ues.size(); ++u) {
    const Ue& ue = in.ues[u];
    const double r = std::hypot(ue.x_m - site.x_m, ue.y_m - site.y_m);
    const auto geo = link_geometry(r, site.height_m, in.ue_height_m);
    double g = column_gain_db(0.0, geo.depression_rad, *in.antenna) + path_gain_db(geo.distance_3d_m, *in.path);
    if (in.shadow) g += shadow_buf[u];
    row[u] = g;
  }
}

GainMatrix allocate(const GainInputs& in) {
  GainMatrix g;
  g.n_sites = in.sites.size();
  g.n_ues = in.ues.size();
  g.db.resize(g.n_sites * g.n_ues);
  return g;
}

struct SiteServed {
  std::vector<std::vector<std::size_t>> ues;  // per site
  std::vector<std::size_t> active;            // transmitting site indices
};

SiteServed index_sites(const RxPowerMatrix& rx, const AssociationState& st) {
  SiteServed idx;
  idx.ues.resize(rx.n_sites);
  for (std::size_t u = 0; u < rx.n_ues; ++u)
    if (st.is_served(u)) idx.ues[static_cast<std::size_t>(st.serving[u])].push_back(u);
  for (std::size_t s = 0; s < rx.n_sites; ++s)
    if (st.active[s]) idx.active.push_back(s);
  return idx;
}

double data_sinr_one(std::size_t u, const RxPowerMatrix& rx, const AssociationState& st,
                     const std::vector<BeamWeights>& beams, const BeamInputs& in, const SiteServed& idx,
                     double noise_mw) {
  if (!st.is_served(u)) return std::numeric_limits<double>::quiet_NaN();
  const auto m = static_cast<std::size_t>(st.serving[u]);
  const int n = in.n_antennas;
  const Ue& ue = in.ues[u];

  double signal = rx.at(m, u);
  if (n > 1) signal *= combining_power(beams[u].weights, steering_phases(azimuth_rad(in.sites[m], ue), n, in.spacing_wavelengths));

  double interference = 0;
  std::vector<BeamWeights> site_beams;
  for (std::size_t s : idx.active) {
    if (s == m) continue;
    double p = rx.at(s, u);
    if (n > 1) {
      const auto h = steering_phases(azimuth_rad(in.sites[s], ue), n, in.spacing_wavelengths);
      site_beams.clear();
      for (std::size_t v : idx.ues[s]) site_beams.push_back(beams[v]);
      p *= db_to_linear(interference_link_gain_db(0.0, site_beams, h));
    }
    interference += p;
  }
  return linear_to_db(signal / (interference + noise_mw));
}

}  // namespace

GainMatrix gain_matrix_serial(const GainInputs& in) {
  GainMatrix g = allocate(in);
  std::vector<double> buf;
  for (std::size_t s = 0; s < g.n_sites; ++s) gain_row(in, s, buf, g.db.data() + s * g.n_ues);
  return g;
}

GainMatrix gain_matrix_parallel(const GainInputs& in) {
  GainMatrix g = allocate(in);
  const auto n = static_cast<long>(g.n_sites);
#pragma omp parallel
  {
    std::vector<double> buf;
#pragma omp for schedule(static)
    for (long s = 0; s < n; ++s)
      gain_row(in, static_cast<std::size_t>(s), buf, g.db.data() + static_cast<std::size_t>(s) * g.n_ues);
  }
  return g;
}

RxPowerMatrix rx_power_serial(const GainMatrix& g, std::span<const double> tx_dbm) {
  RxPowerMatrix rx{g.n_sites, g.n_ues, std::vector<double>(g.db.size())};
  for (std::size_t s = 0; s < g.n_sites; ++s)
    for (std::size_t u = 0; u < g.n_ues; ++u) rx.mw[s * g.n_ues + u] = db_to_linear(tx_dbm[s] + g.at(s, u));
  return rx;
}

RxPowerMatrix rx_power_parallel(const GainMatrix& g, std::span<const double> tx_dbm) {
  RxPowerMatrix rx{g.n_sites, g.n_ues, std::vector<double>(g.db.size())};
  const auto n = static_cast<long>(g.n_sites);
#pragma omp parallel for schedule(static)
  for (long s = 0; s < n; ++s) {
    const auto ss = static_cast<std::size_t>(s);
    for (std::size_t u = 0; u < g.n_ues; ++u) rx.mw[ss * g.n_ues + u] = db_to_linear(tx_dbm[ss] + g.at(ss, u));
  }
  return rx;
}

double azimuth_rad(const Site& s, const Ue& u) { return std::atan2(u.y_m - s.y_m, u.x_m - s.x_m); }

std::vector<BeamWeights> select_beams(const BeamInputs& in, const AssociationState& st) {
  std::vector<BeamWeights> beams(in.ues.size());
  for (std::size_t u = 0; u < in.ues.size(); ++u) {
    if (!st.is_served(u)) continue;
    const Site& s = in.sites[static_cast<std::size_t>(st.serving[u])];
    const auto h = steering_phases(azimuth_rad(s, in.ues[u]), in.n_antennas, in.spacing_wavelengths);
    beams[u] = select_beam(h, in.n_antennas);
  }
  return beams;
}

std::vector<double> data_sinr_serial(const RxPowerMatrix& rx, const AssociationState& st,
                                     const std::vector<BeamWeights>& beams, const BeamInputs& in, double noise_mw) {
  const SiteServed idx = index_sites(rx, st);
  std::vector<double> out(rx.n_ues);
  for (std::size_t u = 0; u < rx.n_ues; ++u) out[u] = data_sinr_one(u, rx, st, beams, in, idx, noise_mw);
  return out;
}

std::vector<double> data_sinr_parallel(const RxPowerMatrix& rx, const AssociationState& st,
                                       const std::vector<BeamWeights>& beams, const BeamInputs& in, double noise_mw) {
  const SiteServed idx = index_sites(rx, st);
  std::vector<double> out(rx.n_ues);
  const auto n = static_cast<long>(rx.n_ues);
#pragma omp parallel for schedule(dynamic, 4)
  for (long u = 0; u < n; ++u)
    out[static_cast<std::size_t>(u)] = data_sinr_one(static_cast<std::size_t>(u), rx, st, beams, in, idx, noise_mw);
  return out;
}

}  // namespace udn::kernels
