#include "udn/fastfading.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "udn/propagation.hpp"
#include "udn/rng.hpp"

namespace udn {

KFactorModel KFactorModel::from_config(const ScenarioConfig& cfg) {
  KFactorModel m;
  m.k_los = cfg.k_factor_los;
  m.k_floor = cfg.k_factor_floor;
  m.fit_distance_m = cfg.k_factor_fit_distance_m;
  return m;
}

double KFactorModel::decay_length_m() const {
  const double p = los_probability_closed_form(fit_distance_m);
  const double k_fit = p / (1.0 - p);
  if (!(k_fit > 0 && k_fit < k_los) || fit_distance_m <= los_zone_m)
    throw std::invalid_argument("K factor fit point must lie beyond the LOS zone");
  return (fit_distance_m - los_zone_m) / std::log(k_los / k_fit);
}

double KFactorModel::operator()(double d) const {
  if (d <= los_zone_m) return k_los;
  return std::max(k_floor, k_los * std::exp(-(d - los_zone_m) / decay_length_m()));
}

double k_factor(double d_m) { return KFactorModel{}(d_m); }

RicianChannel::RicianChannel(std::uint64_t seed, double k, double los_phase)
    : seed_(seed), k_(k), los_(std::polar(std::sqrt(k / (k + 1.0)), los_phase)),
      scatter_std_(std::sqrt(1.0 / (k + 1.0) / 2.0)) {
  if (k < 0) throw std::invalid_argument("K factor must be non-negative");
}

void RicianChannel::power_gains(std::uint64_t ue, std::uint64_t tti, std::vector<double>& out) const {
  Rng rng(derive_seed({seed_, static_cast<std::uint64_t>(Stream::fading), ue, tti}));
  std::normal_distribution<double> n(0.0, scatter_std_);
  for (auto& g : out) {
    const double re = los_.real() + n(rng);
    const double im = los_.imag() + n(rng);
    g = re * re + im * im;
  }
}

std::complex<double> RicianChannel::sample(std::uint64_t ue, std::uint64_t rb, std::uint64_t tti) const {
  Rng rng(derive_seed({seed_, static_cast<std::uint64_t>(Stream::fading), ue, tti}));
  std::normal_distribution<double> n(0.0, scatter_std_);
  std::complex<double> h;
  for (std::uint64_t k = 0; k <= rb; ++k) {
    const double re = n(rng);
    const double im = n(rng);
    h = los_ + std::complex<double>(re, im);
  }
  return h;
}

}  // namespace udn
