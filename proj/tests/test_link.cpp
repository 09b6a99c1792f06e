#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "udn/link.hpp"

using namespace udn;

namespace {

RxPowerMatrix matrix(std::size_t sites, std::size_t ues, std::vector<double> mw) { return {sites, ues, std::move(mw)}; }

RadioConstants quiet() {
  RadioConstants rc;
  rc.noise_psd_dbm_hz = -400;  // negligible noise
  return rc;
}

}  // namespace

TEST_CASE("noise power") {
  RadioConstants rc;
  rc.bandwidth_hz = 20e6;
  CHECK(rc.noise_power_dbm() == doctest::Approx(-174 + 10 * std::log10(20e6) + 9));
}

TEST_CASE("transmit power calibration") {
  ScenarioConfig cfg;
  cfg.isd_m = 200;
  cfg.bandwidth_override_hz = 20e6;
  const PathGainModel m = PathGainModel::from_config(cfg);
  const Site site{0, 0, 0, antenna_height_m(cfg.isd_m), false};
  const double p = calibrate_tx_power_dbm(site, cfg, m);
  const auto geo = link_geometry(200 * std::sqrt(3.0) / 2, site.height_m, cfg.ue_height_m);
  CHECK(p == doctest::Approx(-174 + 10 * std::log10(20e6) + 9 - path_gain_db(geo.distance_3d_m, m) + 12));

  ScenarioConfig wide = cfg;
  wide.bandwidth_override_hz = 40e6;
  CHECK(calibrate_tx_power_dbm(site, wide, m) - p == doctest::Approx(10 * std::log10(2.0)).epsilon(1e-12));

  ScenarioConfig t15 = cfg;
  t15.target_edge_snr_db = 15;
  CHECK(calibrate_tx_power_dbm(site, t15, m) - p == doctest::Approx(3.0).epsilon(1e-12));

  ScenarioConfig comp = cfg;
  comp.calibration_includes_antenna_gain = true;
  CHECK(calibrate_tx_power_dbm(site, comp, m) == doctest::Approx(p - column_gain_db(0, geo.depression_rad)));

  ScenarioConfig circ = cfg;
  circ.edge_convention = EdgeConvention::isd_over_sqrt3;
  CHECK(calibration_edge_distance_m(200, circ.edge_convention) == doctest::Approx(200 / std::sqrt(3.0)));
  CHECK(calibrate_tx_power_dbm(site, circ, m) < p);
}

TEST_CASE("association: single UE, single serving site") {
  const auto rx = matrix(3, 1, {1e-9, 1e-6, 1e-12});
  const auto st = associate(rx, true, RadioConstants{});
  CHECK(st.serving[0] == 1);
  CHECK(st.is_served(0));
  CHECK(st.active == std::vector<char>{0, 1, 0});
  CHECK(st.active_count() == 1u);
  CHECK(st.ues_per_site[1] == 1);
}

TEST_CASE("association: ties go to the lower site id") {
  const auto rx = matrix(3, 1, {1e-12, 1e-6, 1e-6});
  CHECK(associate(rx, false, quiet()).serving[0] == 1);
}

TEST_CASE("association: pilot floor makes holes and holes keep no site active") {
  // Eight equal pilots, all transmitting: -8.45 dB, below the floor.
  std::vector<double> mw(8, 1e-6);
  const auto rx = matrix(8, 1, mw);
  const auto off = associate(rx, false, quiet());
  CHECK(off.pilot_sinr_db[0] == doctest::Approx(-10 * std::log10(7.0)));
  CHECK(off.hole[0]);
  CHECK_FALSE(off.is_served(0));
  const auto on = associate(rx, true, quiet());
  CHECK(on.is_served(0));
  CHECK(on.active_count() == 1u);
}

TEST_CASE("SINR arithmetic") {
  const double noise = 1e-10;
  std::vector<char> tx{1, 1, 1};
  // Single site: SINR = SNR.
  CHECK(sinr_db(0, 0, matrix(1, 1, {1e-8}), {1}, noise) == doctest::Approx(20.0));
  // Two equal links, negligible noise: 0 dB.
  CHECK(sinr_db(0, 0, matrix(2, 1, {1e-6, 1e-6}), {1, 1}, 1e-30) == doctest::Approx(0.0).epsilon(1e-9));
  // Three sites, hand-computed linear sum.
  const auto rx = matrix(3, 1, {4e-9, 1e-9, 5e-10});
  const double oracle = 10 * std::log10(4e-9 / (1e-9 + 5e-10 + 1e-10));
  CHECK(std::abs(sinr_db(0, 0, rx, tx, noise) - oracle) < 1e-9);
  // Idle sites do not interfere.
  CHECK(std::abs(sinr_db(0, 0, rx, {1, 0, 1}, noise) - 10 * std::log10(4e-9 / (5e-10 + 1e-10))) < 1e-9);
}

TEST_CASE("throughput mapping") {
  CHECK(ue_throughput_bps(3.5, 1, 100e6) == doctest::Approx(100e6));
  CHECK(ue_throughput_bps(17, 2, 100e6) == ue_throughput_bps(17, 1, 100e6) / 2);
  CHECK(ue_throughput_bps(20, 1, 500e6) == doctest::Approx(500e6 * std::log2(1 + std::pow(10, 1.65))));
  CHECK(ue_throughput_bps(20, 1, 500e6) == doctest::Approx(2.7566e9).epsilon(1e-4));
  CHECK_THROWS_AS(ue_throughput_bps(10, 0, 1e6), std::invalid_argument);
}
