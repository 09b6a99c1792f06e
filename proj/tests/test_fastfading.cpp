#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "udn/fastfading.hpp"
#include "udn/propagation.hpp"

using namespace udn;

TEST_CASE("K factor over distance") {
  CHECK(k_factor(10) == 32.0);
  CHECK(k_factor(18) == 32.0);
  const double p = los_probability(36);
  CHECK(k_factor(36) == doctest::Approx(p / (1 - p)).epsilon(1e-9));
  CHECK(k_factor(36) == doctest::Approx(2.16).epsilon(0.05 / 2.16));
  CHECK(k_factor(1e5) == 0.1);
  for (double d = 18; d < 200; d += 1) CHECK(k_factor(d + 1) <= k_factor(d));
}

TEST_CASE("Rician: huge K gives a constant unit gain") {
  const RicianChannel ch(1, 1e16, 0.3);
  std::vector<double> g(50);
  ch.power_gains(0, 0, g);
  for (double x : g) CHECK(x == doctest::Approx(1.0).epsilon(1e-6));  // scatter ~ 1/sqrt(K)
}

TEST_CASE("Rician: K = 0 is Rayleigh (KS test at 1%)") {
  const RicianChannel ch(9, 0.0, 0.0);
  std::vector<double> all, row(100);
  for (std::uint64_t t = 0; t < 1000; ++t) {
    ch.power_gains(3, t, row);
    all.insert(all.end(), row.begin(), row.end());
  }
  std::sort(all.begin(), all.end());
  const double n = static_cast<double>(all.size());
  double d = 0, sum = 0;
  for (std::size_t i = 0; i < all.size(); ++i) {
    const double f = 1 - std::exp(-all[i]);
    d = std::max({d, f - i / n, (i + 1) / n - f});
    sum += all[i];
  }
  CHECK(d < 1.628 / std::sqrt(n));
  CHECK(sum / n == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("Rician moments for several K") {
  for (double k : {0.5, 2.16, 32.0}) {
    const RicianChannel ch(77, k, 1.1);
    std::vector<double> row(100);
    double s = 0, s2 = 0, sdb = 0, sdb2 = 0;
    int n = 0;
    for (std::uint64_t t = 0; t < 1000; ++t) {
      ch.power_gains(0, t, row);
      for (double x : row) {
        s += x; s2 += x * x;
        const double db = 10 * std::log10(x);
        sdb += db; sdb2 += db * db;
        ++n;
      }
    }
    // E|h|^2 = 1, E|h|^4 = (K^2 + 4K + 2) / (K + 1)^2.
    CHECK(s / n == doctest::Approx(1.0).epsilon(0.01));
    CHECK(s2 / n == doctest::Approx((k * k + 4 * k + 2) / ((k + 1) * (k + 1))).epsilon(0.03));
    if (k == 32.0) {
      // Reference from a 2e6-sample scipy.stats.rice draw: 1.094 dB.
      const double sd = std::sqrt(sdb2 / n - (sdb / n) * (sdb / n));
      CHECK(sd == doctest::Approx(1.094).epsilon(0.03));
    }
  }
}

TEST_CASE("Rician draws are addressable") {
  const RicianChannel ch(5, 2.0, 0.7);
  std::vector<double> row(12);
  ch.power_gains(4, 9, row);
  for (std::uint64_t k = 0; k < 12; ++k) CHECK(std::norm(ch.sample(4, k, 9)) == row[k]);
  std::vector<double> other(12);
  ch.power_gains(4, 10, other);
  CHECK(other != row);
}
