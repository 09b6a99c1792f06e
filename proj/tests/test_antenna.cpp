#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <complex>
#include <numbers>

#include "udn/antenna.hpp"
#include "udn/kernels.hpp"

using namespace udn;
using std::numbers::pi;

TEST_CASE("dipole elevation pattern") {
  CHECK(dipole_vertical_offset_db(0) == doctest::Approx(0).epsilon(1e-12));
  CHECK(element_gain_db(0, 0) == doctest::Approx(2.15));
  CHECK(dipole_vertical_offset_db(pi / 2) == kPatternFloorDb);
  CHECK(dipole_vertical_offset_db(-pi / 2) == kPatternFloorDb);
  const double t = pi / 4;
  const double oracle = 20 * std::log10(std::abs(std::cos(pi / 2 * std::cos(t + pi / 2)) / std::sin(t + pi / 2)));
  CHECK(dipole_vertical_offset_db(t) == doctest::Approx(oracle).epsilon(1e-12));
  CHECK(dipole_vertical_offset_db(t) == doctest::Approx(-4.04173).epsilon(1e-5));
}

TEST_CASE("vertical array factor") {
  DipoleArrayConfig single;
  single.n_elements_vertical = 1;
  single.excitation = {1.0};
  for (double t = -1.5; t <= 1.5; t += 0.1) CHECK(vertical_array_factor_db(t, single) == doctest::Approx(0).epsilon(1e-12));

  // Brute-force complex sum with the default excitation.
  const DipoleArrayConfig cfg;
  double best_t = 0, best_g = -1e9;
  for (int i = -900; i <= 900; ++i) {
    const double t = i * pi / 1800;
    std::complex<double> s = 0;
    for (int n = 0; n < 4; ++n)
      s += cfg.excitation[static_cast<std::size_t>(n)] *
           std::exp(std::complex<double>(0, n * (2 * pi * 0.6 * -std::sin(t) + 1.658)));
    const double g = std::max(20 * std::log10(std::abs(s)), kPatternFloorDb);
    CHECK(std::abs(vertical_array_factor_db(t, cfg) - g) < 1e-9);
    if (g > best_g) {
      best_g = g;
      best_t = t;
    }
  }
  // Main lobe points below the horizon.
  CHECK(best_t > 0.3);
  CHECK(best_t < 0.6);

  DipoleArrayConfig sym;
  sym.excitation = {0.5, 1.0, 1.0, 0.5};
  sym.phase_increment_rad = 0;
  for (double t = 0; t < 1.5; t += 0.05)
    CHECK(vertical_array_factor_db(t, sym) == doctest::Approx(vertical_array_factor_db(-t, sym)).epsilon(1e-12));
}

TEST_CASE("codebooks have unit magnitude per antenna") {
  CHECK(rank1_codebook(1).size() == 1u);
  CHECK(rank1_codebook(2).size() == 4u);
  CHECK(rank1_codebook(4).size() == 16u);
  for (int n : {1, 2, 4})
    for (const auto& w : rank1_codebook(n))
      for (auto c : w) CHECK(std::abs(c) == doctest::Approx(1.0));
  CHECK_THROWS_AS(rank1_codebook(3), std::invalid_argument);
}

TEST_CASE("beam selection") {
  const std::vector<cplx> one{cplx(1, 0)};
  const auto b1 = select_beam(one, 1);
  CHECK(b1.weights[0] == cplx(1, 0));
  CHECK(combining_power(b1.weights, one) == 1.0);

  const std::vector<cplx> h{1, 1};
  const auto b = select_beam(h, 2);
  double best = 0;
  for (const auto& w : rank1_codebook(2)) best = std::max(best, combining_power(w, h));
  CHECK(combining_power(b.weights, h) == best);
  CHECK(b.codebook_index == 0);
  CHECK(array_gain_db(b.weights, h) == doctest::Approx(3.0103).epsilon(1e-4));

  Rng rng(5);
  std::uniform_real_distribution<double> u(0, 2 * pi);
  for (int trial = 0; trial < 200; ++trial) {
    for (int n : {2, 4}) {
      const auto hh = steering_phases(u(rng), n, 0.6);
      const auto sel = select_beam(hh, n);
      for (const auto& w : rank1_codebook(n)) CHECK(combining_power(sel.weights, hh) >= combining_power(w, hh));
      // Serving gain never drops below the single-antenna gain.
      CHECK(beamformed_link_gain_db(0, sel.weights, hh) >= -1e-9);
    }
  }
}

TEST_CASE("victim in an interferer's null sees less than the omni level") {
  // Interferer at the origin serves a UE along the array axis (phi = 0);
  // the victim sits at broadside where the two columns add in phase.
  const Site s{0, 0, 0, 10, false};
  const Ue served{0, 30, 0, {}};
  const Ue victim{1, 0, 30, {}};
  const auto hs = steering_phases(kernels::azimuth_rad(s, served), 2, 0.6);
  const auto hv = steering_phases(kernels::azimuth_rad(s, victim), 2, 0.6);
  const std::vector<BeamWeights> beams{select_beam(hs, 2)};
  const double base = -80;
  const double g = interference_link_gain_db(base, beams, hv);
  const double oracle =
      base + 10 * std::log10(std::max(std::norm(beams[0].weights[0] * hv[0] + beams[0].weights[1] * hv[1]), 1e-12));
  CHECK(g == doctest::Approx(oracle));
  CHECK(g < base);
}

TEST_CASE("two-antenna array gain over random phases stays within [0, 3.01] dB") {
  Rng rng(8);
  std::uniform_real_distribution<double> u(0, 2 * pi);
  double sum = 0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const std::vector<cplx> h{std::polar(1.0, u(rng)), std::polar(1.0, u(rng))};
    sum += combining_power(select_beam(h, 2).weights, h) / 2;
  }
  const double mean_db = 10 * std::log10(sum / n);
  CHECK(mean_db >= 0);
  CHECK(mean_db <= 3.0103);
}
