#pragma once

#include <span>
#include <vector>

namespace udn {

// Linear interpolation between the closest order statistics:
// h = (n - 1) p, x[floor h] + (h - floor h) (x[floor h + 1] - x[floor h]).
// p in [0, 1]. Throws on empty input.
double percentile(std::span<const double> values, double p);
double percentile_sorted(std::span<const double> sorted, double p);

double mean(std::span<const double> values);

// Empirical CDF evaluated at each grid point: fraction of samples <= x.
std::vector<double> empirical_cdf(std::span<const double> values, std::span<const double> grid);

}  // namespace udn
