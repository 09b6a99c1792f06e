#include "udn/propagation.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "udn/rng.hpp"

namespace udn {

PathGainModel PathGainModel::from_config(const ScenarioConfig& cfg) {
  PathGainModel m;
  m.carrier_ghz = cfg.carrier_ghz;
  m.smoothing_start_m = cfg.los_smoothing_start_m;
  m.smoothing_end_m = cfg.los_smoothing_end_m;
  return m;
}

double los_probability_closed_form(double d) {
  if (d <= 0) d = 0.5;
  const double e = std::exp(-d / 36.0);
  return std::min(18.0 / d, 1.0) * (1.0 - e) + e;
}

namespace {

double los_closed_form_slope(double d) {
  if (d <= 18.0) return 0.0;
  const double e = std::exp(-d / 36.0);
  return -18.0 / (d * d) - e / 36.0 * (1.0 - 18.0 / d) + e * 18.0 / (d * d);
}

}  // namespace

double los_probability(double d, double a, double b) {
  if (d <= 0) d = 0.5;
  if (d <= a || d >= b) return los_probability_closed_form(d);
  const double w = b - a;
  const double t = (d - a) / w;
  const double p0 = los_probability_closed_form(a);
  const double p1 = los_probability_closed_form(b);
  const double m0 = los_closed_form_slope(a) * w;
  const double m1 = los_closed_form_slope(b) * w;
  const double t2 = t * t;
  const double t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * p0 + (t3 - 2 * t2 + t) * m0 + (-2 * t3 + 3 * t2) * p1 + (t3 - t2) * m1;
}

double umi_loss_db(const UmiCoefficients& c, double d, double f_ghz) {
  return c.slope * std::log10(d) + c.intercept + c.freq_term * std::log10(f_ghz);
}

double path_gain_db(double d, const PathGainModel& m) {
  if (d < 0.5) d = 0.5;
  const double p = los_probability(d, m.smoothing_start_m, m.smoothing_end_m);
  const double loss = p * umi_loss_db(m.los, d, m.carrier_ghz) + (1.0 - p) * umi_loss_db(m.nlos, d, m.carrier_ghz);
  return -loss;
}

ShadowField::ShadowField(std::vector<double> xs, std::vector<double> ys, const Params& params, std::uint64_t seed)
    : xs_(std::move(xs)), ys_(std::move(ys)), params_(params), seed_(seed) {
  if (xs_.size() != ys_.size()) throw std::invalid_argument("shadow field: coordinate length mismatch");
  const auto n = static_cast<Eigen::Index>(xs_.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    auto x = xs_[i], y = ys_[i];
    if (x < params_.bound_lo_m || x > params_.bound_hi_m || y < params_.bound_lo_m || y > params_.bound_hi_m)
      throw std::out_of_range("shadow field: position outside region and guard margin");
  }
  Eigen::MatrixXd corr(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    corr(i, i) = 1.0 + 1e-10;
    for (Eigen::Index j = 0; j < i; ++j) {
      const double d = std::hypot(xs_[i] - xs_[j], ys_[i] - ys_[j]);
      corr(i, j) = corr(j, i) = std::exp(-d / params_.decorrelation_m);
    }
  }
  Eigen::LLT<Eigen::MatrixXd> llt(corr);
  if (llt.info() != Eigen::Success) throw std::runtime_error("shadow field: correlation matrix not positive definite");
  chol_ = llt.matrixL();
  common_ = correlated_normals(derive_seed({seed_, static_cast<std::uint64_t>(Stream::shadow_common)}));
}

Eigen::VectorXd ShadowField::correlated_normals(std::uint64_t stream_seed) const {
  Rng rng(stream_seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd z(chol_.rows());
  for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = normal(rng);
  return chol_.triangularView<Eigen::Lower>() * z;
}

void ShadowField::site_shadow_db(int site_id, std::vector<double>& out) const {
  const Eigen::VectorXd own = correlated_normals(
      derive_seed({seed_, static_cast<std::uint64_t>(Stream::shadow_site), static_cast<std::uint64_t>(site_id)}));
  const double a = params_.sigma_db * std::sqrt(params_.inter_site_correlation);
  const double b = params_.sigma_db * std::sqrt(1.0 - params_.inter_site_correlation);
  out.resize(xs_.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = a * common_[static_cast<Eigen::Index>(i)] + b * own[static_cast<Eigen::Index>(i)];
}

std::vector<double> ShadowField::site_shadow_db(int site_id) const {
  std::vector<double> out;
  site_shadow_db(site_id, out);
  return out;
}

double ShadowField::sample_db(int site_id, std::size_t point_index) const {
  if (point_index >= xs_.size()) throw std::out_of_range("shadow field: point index");
  return site_shadow_db(site_id)[point_index];
}

}  // namespace udn
