#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "udn/config.hpp"

namespace udn {

// Distance-dependent Rician K factor: K_los inside the LOS zone (d <= 18 m),
// then an exponential decay toward a near-Rayleigh floor. The decay length
// is fitted so K(fit distance) equals P_LOS / (1 - P_LOS) there.
struct KFactorModel {
  double k_los = 32.0;
  double k_floor = 0.1;
  double los_zone_m = 18.0;
  double fit_distance_m = 36.0;

  static KFactorModel from_config(const ScenarioConfig& cfg);
  double decay_length_m() const;
  double operator()(double d_m) const;
};

// Linear K factor with the default model.
double k_factor(double d_m);

// h = sqrt(K/(K+1)) e^{j phi_los} + sqrt(1/(K+1)) CN(0,1); E|h|^2 = 1.
// Each (ue, tti) pair owns a counter-derived stream, so draws are
// reproducible and independent of evaluation order; RBs are i.i.d.
class RicianChannel {
 public:
  RicianChannel(std::uint64_t seed, double k_factor, double los_phase_rad);

  // |h|^2 on every RB of one TTI for this UE.
  void power_gains(std::uint64_t ue, std::uint64_t tti, std::vector<double>& out) const;
  std::complex<double> sample(std::uint64_t ue, std::uint64_t rb, std::uint64_t tti) const;

  double k() const { return k_; }

 private:
  std::uint64_t seed_;
  double k_;
  std::complex<double> los_;
  double scatter_std_;  // per real dimension
};

}  // namespace udn
