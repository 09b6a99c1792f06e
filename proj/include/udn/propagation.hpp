#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "udn/config.hpp"

namespace udn {

// Urban-micro log-distance loss: slope*log10(d) + intercept + freq_term*log10(f_GHz).
struct UmiCoefficients {
  double slope;
  double intercept;
  double freq_term;
};

inline constexpr UmiCoefficients kUmiLos{22.0, 28.0, 20.0};
inline constexpr UmiCoefficients kUmiNlos{36.7, 22.7, 26.0};

struct PathGainModel {
  double carrier_ghz = 2.0;
  UmiCoefficients los = kUmiLos;
  UmiCoefficients nlos = kUmiNlos;
  double smoothing_start_m = 18.0;
  double smoothing_end_m = 22.0;

  static PathGainModel from_config(const ScenarioConfig& cfg);
};

// Unsmoothed LOS probability: min(18/d,1)(1-exp(-d/36)) + exp(-d/36).
double los_probability_closed_form(double d_m);

// LOS probability with a C1 cubic Hermite bridge over the smoothing window.
// d <= 0 is clamped to 0.5 m.
double los_probability(double d_m, double smoothing_start_m = 18.0, double smoothing_end_m = 22.0);

// Positive loss in dB for one regime.
double umi_loss_db(const UmiCoefficients& c, double d_m, double carrier_ghz);

// LOS/NLOS blend, returned as a (negative) gain in dB. d is the 3D distance.
double path_gain_db(double d3d_m, const PathGainModel& model);

// Spatially correlated log-normal shadowing, realized at a fixed set of
// query points. Each site sees sigma * (sqrt(rho) Z_common + sqrt(1-rho) Z_site)
// where both Gaussian fields have autocorrelation exp(-distance / d_corr).
// The per-site field is drawn on demand from a counter-based stream, so any
// site can be evaluated independently and in any order.
class ShadowField {
 public:
  struct Params {
    double sigma_db = 6.0;
    double inter_site_correlation = 0.5;
    double decorrelation_m = 20.0;
    // Query points must lie within [lo, hi]^2.
    double bound_lo_m = -1e300;
    double bound_hi_m = 1e300;
  };

  ShadowField(std::vector<double> xs, std::vector<double> ys, const Params& params, std::uint64_t seed);

  std::size_t size() const { return xs_.size(); }
  const Params& params() const { return params_; }

  // Shadow gain in dB of `site_id` at every query point.
  std::vector<double> site_shadow_db(int site_id) const;
  void site_shadow_db(int site_id, std::vector<double>& out) const;

  // Single query; convenient for tests, O(n^2) per call.
  double sample_db(int site_id, std::size_t point_index) const;

 private:
  Eigen::VectorXd correlated_normals(std::uint64_t stream_seed) const;

  std::vector<double> xs_;
  std::vector<double> ys_;
  Params params_;
  std::uint64_t seed_;
  Eigen::MatrixXd chol_;  // lower Cholesky factor of the spatial correlation
  Eigen::VectorXd common_;
};

}  // namespace udn
