#include "udn/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace udn {

double percentile_sorted(std::span<const double> x, double p) {
  if (x.empty()) throw std::invalid_argument("percentile of empty sample");
  if (p < 0 || p > 1) throw std::invalid_argument("percentile level must lie in [0,1]");
  const double h = (static_cast<double>(x.size()) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, x.size() - 1);
  return x[lo] + (h - static_cast<double>(lo)) * (x[hi] - x[lo]);
}

double percentile(std::span<const double> values, double p) {
  std::vector<double> x(values.begin(), values.end());
  std::sort(x.begin(), x.end());
  return percentile_sorted(x, p);
}

double mean(std::span<const double> v) {
  if (v.empty()) throw std::invalid_argument("mean of empty sample");
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

std::vector<double> empirical_cdf(std::span<const double> values, std::span<const double> grid) {
  std::vector<double> x(values.begin(), values.end());
  std::sort(x.begin(), x.end());
  std::vector<double> out;
  out.reserve(grid.size());
  for (double g : grid) {
    const auto n = std::upper_bound(x.begin(), x.end(), g) - x.begin();
    out.push_back(x.empty() ? 0.0 : static_cast<double>(n) / static_cast<double>(x.size()));
  }
  return out;
}

}  // namespace udn
