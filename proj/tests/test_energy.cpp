#include <doctest.h>

#include <stdexcept>

#include "udn/energy.hpp"

using namespace udn;

TEST_CASE("power table is embedded verbatim") {
  const auto& t = PowerTable::standard();
  CHECK(t.rows().size() == 27u);
  CHECK(t.row(35, 1).full_load_w == 0.7558);
  CHECK(t.row(200, 1).idle2_w == 0.1881);
  CHECK(t.row(200, 1).tx_power_dbm == 23.27);
  CHECK(t.row(5, 4).full_load_w == 3.2895);
  CHECK(t.row(20, 2).idle1_w == 0.2826);
  CHECK_THROWS_WITH_AS(t.row(33, 1), "no power-model row", std::out_of_range);
  CHECK_FALSE(t.has_row(200, 3));
}

TEST_CASE("sleep model draws") {
  const auto& r = PowerTable::standard().row(200, 1);
  CHECK(idle_power_w(r, SleepModel::sm1) == 0.2324);
  CHECK(idle_power_w(r, SleepModel::sm2) == 0.1881);
  CHECK(idle_power_w(r, SleepModel::sm3) == doctest::Approx(0.0697).epsilon(1e-4 / 0.0697));
  CHECK(idle_power_w(r, SleepModel::sm4) == doctest::Approx(0.15 * 0.2324));
  CHECK(idle_power_w(r, SleepModel::sm5) == 0.0);
  CHECK(site_power_w(SiteState::active, r, SleepModel::sm5) == 1.8923);
  CHECK(site_power_w(SiteState::active, r, SleepModel::sm1, 0.0) == 0.2324);
  CHECK_THROWS_AS(site_power_w(SiteState::active, r, SleepModel::sm1, 1.5), std::invalid_argument);
}

TEST_CASE("energy efficiency") {
  const auto& r = PowerTable::standard().row(50, 1);
  std::vector<SiteEnergyState> sites(10, {SiteState::idle, 1.0});
  sites[3].state = SiteState::active;
  const std::vector<double> tput{4e8};
  CHECK(network_energy_efficiency_bps_per_w(tput, sites, r, SleepModel::sm5) == doctest::Approx(4e8 / 0.7853));
  double prev = 0;
  for (auto sm : {SleepModel::sm1, SleepModel::sm3, SleepModel::sm4, SleepModel::sm5}) {
    const double ee = network_energy_efficiency_bps_per_w(tput, sites, r, sm);
    CHECK(ee >= prev);
    prev = ee;
  }
  std::vector<SiteEnergyState> none(3, {SiteState::idle, 1.0});
  CHECK_THROWS_AS(network_energy_efficiency_bps_per_w(tput, none, r, SleepModel::sm5), std::invalid_argument);
}
