#include "udn/antenna.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace udn {

namespace {

constexpr double kPi = std::numbers::pi;

double to_db_floored(double amplitude) {
  if (!(amplitude > 0)) return kPatternFloorDb;
  return std::max(20.0 * std::log10(amplitude), kPatternFloorDb);
}

std::vector<std::vector<cplx>> build_codebook(int n) {
  const cplx j(0, 1);
  if (n == 1) return {{cplx(1, 0)}};
  if (n == 2) return {{1, 1}, {1, -1}, {1, j}, {1, -j}};
  if (n != 4) throw std::invalid_argument("codebook defined for 1, 2 or 4 antennas");

  // Householder generating vectors u_n; W_n = I - 2 u u^H / (u^H u), rank-1
  // precoder = first column, scaled by 2 to unit magnitude per antenna.
  const double r = 1.0 / std::numbers::sqrt2;
  const std::array<std::array<cplx, 4>, 16> u{{
      {1, -1, -1, -1},
      {1, -j, 1, j},
      {1, 1, -1, 1},
      {1, j, 1, -j},
      {1, cplx(-r, -r), -j, cplx(r, -r)},
      {1, cplx(r, -r), j, cplx(-r, -r)},
      {1, cplx(r, r), -j, cplx(-r, r)},
      {1, cplx(-r, r), j, cplx(r, r)},
      {1, -1, 1, 1},
      {1, -j, -1, -j},
      {1, 1, 1, -1},
      {1, j, -1, j},
      {1, -1, -1, 1},
      {1, -1, 1, -1},
      {1, 1, -1, -1},
      {1, 1, 1, 1},
  }};
  std::vector<std::vector<cplx>> book;
  for (const auto& un : u) {
    double norm = 0;
    for (auto c : un) norm += std::norm(c);
    std::vector<cplx> w(4);
    for (int i = 0; i < 4; ++i) {
      const cplx first_col = (i == 0 ? 1.0 : 0.0) - 2.0 * un[i] * std::conj(un[0]) / norm;
      w[i] = 2.0 * first_col;
    }
    book.push_back(std::move(w));
  }
  return book;
}

}  // namespace

void DipoleArrayConfig::validate() const {
  if (n_elements_vertical < 1) throw std::invalid_argument("array needs at least one element");
  if (static_cast<int>(excitation.size()) != n_elements_vertical)
    throw std::invalid_argument("excitation length must equal the number of vertical elements");
  if (n_horizontal != 1 && n_horizontal != 2 && n_horizontal != 4)
    throw std::invalid_argument("horizontal array size must be 1, 2 or 4");
}

double dipole_vertical_offset_db(double theta) {
  const double s = std::sin(theta + kPi / 2);
  if (std::abs(s) < 1e-12) return kPatternFloorDb;
  const double v = std::cos(kPi / 2 * std::cos(theta + kPi / 2)) / s;
  return to_db_floored(std::abs(v));
}

double element_gain_db(double /*phi*/, double theta, const DipoleArrayConfig& cfg) {
  constexpr double horizontal_offset_db = 0.0;
  return cfg.max_element_gain_dbi + horizontal_offset_db + dipole_vertical_offset_db(theta);
}

double vertical_array_factor_db(double theta, const DipoleArrayConfig& cfg) {
  const double step = 2 * kPi * cfg.spacing_wavelengths * (-std::sin(theta)) + cfg.phase_increment_rad;
  cplx sum = 0;
  for (int n = 0; n < cfg.n_elements_vertical; ++n) sum += cfg.excitation[n] * std::polar(1.0, n * step);
  return to_db_floored(std::abs(sum));
}

double column_gain_db(double phi, double theta, const DipoleArrayConfig& cfg) {
  return element_gain_db(phi, theta, cfg) + vertical_array_factor_db(theta, cfg);
}

std::vector<cplx> steering_phases(double azimuth, int n, double spacing) {
  std::vector<cplx> h(static_cast<std::size_t>(n));
  const double step = 2 * kPi * spacing * std::cos(azimuth);
  for (int i = 0; i < n; ++i) h[i] = std::polar(1.0, i * step);
  return h;
}

const std::vector<std::vector<cplx>>& rank1_codebook(int n) {
  static const std::vector<std::vector<cplx>> one = build_codebook(1);
  static const std::vector<std::vector<cplx>> two = build_codebook(2);
  static const std::vector<std::vector<cplx>> four = build_codebook(4);
  switch (n) {
    case 1: return one;
    case 2: return two;
    case 4: return four;
    default: throw std::invalid_argument("codebook defined for 1, 2 or 4 antennas");
  }
}

double combining_power(std::span<const cplx> w, std::span<const cplx> h) {
  if (w.size() != h.size()) throw std::invalid_argument("weight/channel size mismatch");
  cplx s = 0;
  for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * h[i];
  return std::norm(s);
}

BeamWeights select_beam(std::span<const cplx> channel, int n) {
  if (static_cast<int>(channel.size()) != n) throw std::invalid_argument("channel length must equal antenna count");
  const auto& book = rank1_codebook(n);
  BeamWeights best{0, book[0]};
  double best_p = combining_power(book[0], channel);
  for (std::size_t k = 1; k < book.size(); ++k) {
    const double p = combining_power(book[k], channel);
    if (p > best_p) {
      best_p = p;
      best = BeamWeights{static_cast<int>(k), book[k]};
    }
  }
  return best;
}

double array_gain_db(std::span<const cplx> w, std::span<const cplx> h) {
  return 10.0 * std::log10(combining_power(w, h) / static_cast<double>(w.size()));
}

double beamformed_link_gain_db(double base, std::span<const cplx> w, std::span<const cplx> h) {
  return base + 10.0 * std::log10(std::max(combining_power(w, h), 1e-12));
}

double interference_link_gain_db(double base, std::span<const BeamWeights> beams, std::span<const cplx> h) {
  double p = 0;
  if (beams.empty()) {
    const auto& book = rank1_codebook(static_cast<int>(h.size()));
    for (const auto& w : book) p += combining_power(w, h);
    p /= static_cast<double>(book.size());
  } else {
    for (const auto& b : beams) p += combining_power(b.weights, h);
    p /= static_cast<double>(beams.size());
  }
  return base + 10.0 * std::log10(std::max(p, 1e-12));
}

}  // namespace udn
