#include "udn/energy.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace udn {

const PowerTable& PowerTable::standard() {
  // isd, antennas, tx dBm, full load, slow idle, shut-down
  static const PowerTable table({
      {200, 1, 23.27, 1.8923, 0.2324, 0.1881}, {200, 2, 23.27, 2.5848, 0.3105, 0.2478},
      {200, 4, 23.27, 4.4560, 0.4959, 0.4073}, {150, 1, 20.52, 1.3405, 0.2191, 0.1748},
      {150, 2, 20.52, 2.0316, 0.2971, 0.2345}, {150, 4, 20.52, 3.9015, 0.4825, 0.3939},
      {100, 1, 16.64, 0.9793, 0.2104, 0.1661}, {100, 2, 16.64, 1.6696, 0.2884, 0.2257},
      {100, 4, 16.64, 3.5386, 0.4738, 0.3852}, {75, 1, 13.90, 0.8643, 0.2076, 0.1633},
      {75, 2, 13.90, 1.5544, 0.2856, 0.2230},  {75, 4, 13.90, 3.4231, 0.4710, 0.3824},
      {50, 1, 10.02, 0.7853, 0.2057, 0.1614},  {50, 2, 10.02, 1.4752, 0.2837, 0.2210},
      {50, 4, 10.02, 3.3437, 0.4691, 0.3804},  {35, 1, 6.61, 0.7558, 0.2050, 0.1607},
      {35, 2, 6.61, 1.4456, 0.2830, 0.2203},   {35, 4, 6.61, 3.3141, 0.4683, 0.3797},
      {20, 1, 1.27, 0.7383, 0.2046, 0.1603},   {20, 2, 1.27, 1.4281, 0.2826, 0.2199},
      {20, 4, 1.27, 3.2965, 0.4679, 0.3793},   {10, 1, -5.20, 0.7326, 0.2044, 0.1601},
      {10, 2, -5.20, 1.4224, 0.2824, 0.2198},  {10, 4, -5.20, 3.2908, 0.4678, 0.3792},
      {5, 1, -11.89, 0.7314, 0.2044, 0.1601},  {5, 2, -11.89, 1.4211, 0.2824, 0.2197},
      {5, 4, -11.89, 3.2895, 0.4678, 0.3791},
  });
  return table;
}

bool PowerTable::has_row(double isd_m, int n) const {
  for (const auto& r : rows_)
    if (r.isd_m == isd_m && r.n_antennas == n) return true;
  return false;
}

const PowerRow& PowerTable::row(double isd_m, int n) const {
  for (const auto& r : rows_)
    if (r.isd_m == isd_m && r.n_antennas == n) return r;
  throw std::out_of_range("no power-model row");
}

double idle_power_w(const PowerRow& row, SleepModel sm) {
  switch (sm) {
    case SleepModel::sm1: return row.idle1_w;
    case SleepModel::sm2: return row.idle2_w;
    case SleepModel::sm3: return 0.30 * row.idle1_w;
    case SleepModel::sm4: return 0.15 * row.idle1_w;
    case SleepModel::sm5: return 0.0;
  }
  throw std::invalid_argument("unknown sleep model");
}

double site_power_w(SiteState state, const PowerRow& row, SleepModel sm, double load) {
  if (state == SiteState::idle) return idle_power_w(row, sm);
  if (load < 0 || load > 1) throw std::invalid_argument("load fraction must lie in [0,1]");
  return row.idle1_w + (row.full_load_w - row.idle1_w) * load;
}

double network_energy_efficiency_bps_per_w(std::span<const double> tput, std::span<const SiteEnergyState> sites,
                                            const PowerRow& row, SleepModel sm) {
  const double bits = std::accumulate(tput.begin(), tput.end(), 0.0);
  double watts = 0;
  for (const auto& s : sites) watts += site_power_w(s.state, row, sm, s.load_fraction);
  if (!(watts > 0)) throw std::invalid_argument("network draws no power");
  return bits / watts;
}

}  // namespace udn
