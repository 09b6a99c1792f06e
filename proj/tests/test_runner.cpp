#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <string>

#include "udn/kernels.hpp"
#include "udn/runner.hpp"
#include "udn/stats.hpp"

using namespace udn;
namespace fs = std::filesystem;

namespace {

ScenarioConfig small(double isd) {
  ScenarioConfig cfg;
  cfg.isd_m = isd;
  cfg.runs = 2;
  return cfg;
}

int run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "udnsim");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  return cli_main(static_cast<int>(argv.size()), argv.data());
}

std::vector<std::string> data_lines(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);)
    if (!line.empty() && line[0] != '#') out.push_back(line);
  return out;
}

fs::path scratch(const std::string& name) {
  auto p = fs::temp_directory_path() / ("udn_test_" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("percentile and CDF") {
  std::vector<double> v(100);
  std::iota(v.begin(), v.end(), 1.0);
  CHECK(percentile(v, 0.05) == doctest::Approx(5.95));
  CHECK(percentile(v, 0.0) == 1.0);
  CHECK(percentile(v, 1.0) == 100.0);
  CHECK(percentile(std::vector<double>{7}, 0.3) == 7.0);
  CHECK_THROWS_AS(percentile(std::vector<double>{}, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(mean(std::vector<double>{}), std::invalid_argument);
  const std::vector<double> grid{0, 10, 50, 100};
  CHECK(empirical_cdf(v, grid) == std::vector<double>{0, 0.1, 0.5, 1.0});
}

TEST_CASE("config key-value parsing") {
  ScenarioConfig cfg;
  for (const auto& [k, v] : parse_key_values("# comment\nisd = 35\nue_dist = hotspot\nidle=off\nsleep-model = 3\n"))
    CHECK(apply_setting(cfg, k, v));
  CHECK(cfg.isd_m == 35);
  CHECK(cfg.ue_distribution == UeDistribution::nonuniform);
  CHECK_FALSE(cfg.idle_mode_enabled);
  CHECK(cfg.sleep_model == SleepModel::sm3);
  CHECK_FALSE(apply_setting(cfg, "colour", "blue"));
  CHECK_THROWS_AS(apply_setting(cfg, "isd", "abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_key_values("isd 35\n"), std::invalid_argument);
  ScenarioConfig bad;
  bad.num_bs_antennas = 3;
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);
  CHECK(cfg.bandwidth_hz() == doctest::Approx(100e6));
}

TEST_CASE("same seed gives bit-identical runs") {
  const auto cfg = small(50);
  CHECK(execute_run(cfg, 1) == execute_run(cfg, 1));
  CHECK_FALSE(execute_run(cfg, 1) == execute_run(cfg, 2));
  ScenarioConfig other = cfg;
  other.seed = 2;
  CHECK_FALSE(execute_run(cfg, 0) == execute_run(other, 0));
  const auto all = execute_runs(cfg);
  CHECK(all[1] == execute_run(cfg, 1, KernelMode::serial));
}

TEST_CASE("serial and parallel kernels agree bit for bit") {
  for (int antennas : {1, 2, 4}) {
    for (bool idle : {true, false}) {
      ScenarioConfig cfg = small(35);
      cfg.num_bs_antennas = antennas;
      cfg.idle_mode_enabled = idle;
      CHECK(execute_run(cfg, 0, KernelMode::serial) == execute_run(cfg, 0, KernelMode::parallel));
    }
  }
}

TEST_CASE("guard-tier sites never enter statistics") {
  ScenarioConfig cfg = small(20);
  cfg.idle_mode_enabled = false;
  const auto m = execute_run(cfg, 0);
  CHECK(static_cast<int>(m.ue_throughputs_bps.size()) == m.n_ues - m.n_holes - m.n_guard_served);
  CHECK(m.n_active_sites == m.n_interior_sites);
  const auto dep = build_run_deployment(cfg, 0);
  CHECK(static_cast<std::size_t>(m.n_interior_sites) == dep.interior_site_count());
}

TEST_CASE("single-antenna data SINR equals the unbeamformed link SINR") {
  ScenarioConfig cfg = small(35);
  const auto dep = build_run_deployment(cfg, 0);
  const auto path = PathGainModel::from_config(cfg);
  const DipoleArrayConfig antenna;
  const kernels::GainInputs gin{dep.sites, dep.ues, cfg.ue_height_m, &path, &antenna, nullptr};
  const auto gains = kernels::gain_matrix_serial(gin);
  const std::vector<double> tx(dep.sites.size(), 10.0);
  const auto rx = kernels::rx_power_serial(gains, tx);
  const auto rc = RadioConstants::from_config(cfg);
  const auto st = associate(rx, true, rc);
  const kernels::BeamInputs bin{dep.sites, dep.ues, 1, 0.6};
  const auto beams = kernels::select_beams(bin, st);
  const auto sinr = kernels::data_sinr_serial(rx, st, beams, bin, rc.noise_power_mw());
  int served = 0;
  for (std::size_t u = 0; u < dep.ues.size(); ++u) {
    if (!st.is_served(u)) {
      CHECK(std::isnan(sinr[u]));
      continue;
    }
    ++served;
    CHECK(sinr[u] == doctest::Approx(sinr_db(u, st.serving[u], rx, st.active, rc.noise_power_mw())).epsilon(1e-12));
  }
  CHECK(served > 0);
}

TEST_CASE("aggregate") {
  const auto cfg = small(75);
  const auto r = execute_run(cfg, 0);
  const auto s = aggregate({r});
  CHECK(s.runs == 1);
  CHECK(s.mean_ue_tput_bps == mean(r.ue_throughputs_bps));
  CHECK(s.p5_ue_tput_bps == percentile(r.ue_throughputs_bps, 0.05));
  CHECK(s.median_sinr_db == percentile(r.sinr_samples_db, 0.5));
  CHECK(s.active_sites_per_km2 == r.active_sites_per_km2);
  CHECK(s.mean_ues_per_active_site == r.mean_ues_per_active_site);
  CHECK(s.network_tx_power_dbm_per_km2 == r.network_tx_power_dbm_per_km2);
  CHECK(s.coverage_hole_fraction == r.coverage_hole_fraction);
  CHECK(s.ee_by_sleep_model == r.ee_by_sleep_model);
  REQUIRE_FALSE(s.sinr_cdf.empty());
  for (std::size_t i = 1; i < s.sinr_cdf.size(); ++i) CHECK(s.sinr_cdf[i] >= s.sinr_cdf[i - 1]);
  CHECK(s.sinr_cdf.back() == 1.0);
  CHECK_THROWS_AS(aggregate({}), std::invalid_argument);
}

TEST_CASE("energy efficiency ordering per run") {
  ScenarioConfig cfg = small(50);
  cfg.bandwidth_override_hz = 20e6;
  for (int run = 0; run < 3; ++run) {
    const auto m = execute_run(cfg, run);
    const auto& e = m.ee_by_sleep_model;
    CHECK(e[4] >= e[3]);
    CHECK(e[3] >= e[2]);
    CHECK(e[2] >= e[0]);
  }
  cfg.isd_m = 60;  // no power-model row
  CHECK(std::isnan(execute_run(cfg, 0).ee_bps_per_w));
}

TEST_CASE("sweep spec cross product and per-point seeds") {
  const auto spec = SweepSpec::parse("isd = 200, 150, 100, 75, 50, 35, 20, 10, 5\ncarrier_ghz = 2, 3.5, 5, 10\nruns = 3\n");
  CHECK(spec.point_count() == 36u);
  CHECK(spec.base.runs == 3);
  CHECK(spec.point(0).isd_m == 200);
  CHECK(spec.point(1).carrier_ghz == 3.5);
  CHECK(spec.point(35).isd_m == 5);
  CHECK(spec.point(35).carrier_ghz == 10);
  CHECK(spec.point(4).seed == derive_seed({1, 4}));
  CHECK_THROWS_AS(SweepSpec::parse("flavour = 1, 2\n"), std::invalid_argument);
  CHECK_THROWS_AS(spec.point(36), std::out_of_range);
}

TEST_CASE("cli: simulate writes CSVs with an audit block") {
  const auto out = scratch("simulate");
  CHECK(run_cli({"simulate", "--isd", "35", "--ue-density", "300", "--ue-dist", "hotspot", "--carrier-ghz", "10",
                 "--runs", "2", "--out", out.string()}) == 0);
  REQUIRE(fs::exists(out / "summary.csv"));
  REQUIRE(fs::exists(out / "sinr_cdf.csv"));
  std::ifstream in(out / "summary.csv");
  std::string first;
  std::getline(in, first);
  CHECK(first.rfind("#", 0) == 0);
  const auto rows = data_lines(out / "summary.csv");
  CHECK(rows.size() == 2u);
  CHECK(rows[0].rfind("isd,", 0) == 0);
}

TEST_CASE("cli: usage errors exit with 2") {
  CHECK(run_cli({"simulate", "--runs", "1"}) == 2);
  CHECK(run_cli({"simulate", "--isd", "35", "--antennas", "3"}) == 2);
  CHECK(run_cli({"simulate", "--isd", "35", "--ue-dist", "clumpy"}) == 2);
  CHECK(run_cli({"simulate", "--isd", "-5"}) == 2);
  CHECK(run_cli({}) == 2);
  CHECK(run_cli({"frobnicate"}) == 2);
}

TEST_CASE("cli: config file overrides defaults and flags override the file") {
  const auto dir = scratch("config");
  fs::create_directories(dir);
  {
    std::ofstream cfg(dir / "run.cfg");
    cfg << "isd = 200\nruns = 1\nue_density = 100\n";
  }
  CHECK(run_cli({"simulate", "--config", (dir / "run.cfg").string(), "--isd", "150", "--out", dir.string()}) == 0);
  const auto rows = data_lines(dir / "summary.csv");
  REQUIRE(rows.size() == 2u);
  CHECK(rows[1].rfind("150,100,", 0) == 0);
}

TEST_CASE("cli: sweep over 9 ISDs x 4 carriers gives 36 rows") {
  const auto dir = scratch("sweep");
  fs::create_directories(dir);
  {
    std::ofstream spec(dir / "sweep.txt");
    spec << "isd = 200, 150, 100, 75, 50, 35, 20, 10, 5\ncarrier_ghz = 2, 3.5, 5, 10\n";
  }
  CHECK(run_cli({"sweep", (dir / "sweep.txt").string(), "--runs", "1", "--set", "region_side_m=200", "--out",
                 dir.string()}) == 0);
  CHECK(data_lines(dir / "summary.csv").size() == 37u);
}

TEST_CASE("cli: dump-deployment") {
  const auto dir = scratch("dump");
  CHECK(run_cli({"dump-deployment", "--isd", "50", "--out", dir.string()}) == 0);
  CHECK(data_lines(dir / "sites.csv").front() == "site_id,x,y,height,guard");
  CHECK(data_lines(dir / "ues.csv").size() == 76u);
}

TEST_CASE("pilot-side results do not depend on the antenna count") {
  ScenarioConfig cfg = small(35);
  const auto one = execute_run(cfg, 0);
  cfg.num_bs_antennas = 4;
  const auto four = execute_run(cfg, 0);
  CHECK(one.n_holes == four.n_holes);
  CHECK(one.n_active_sites == four.n_active_sites);
  CHECK(one.mean_ues_per_active_site == four.mean_ues_per_active_site);
  CHECK(one.sinr_samples_db.size() == four.sinr_samples_db.size());
}

TEST_CASE("association: common power offset and pilot floor") {
  ScenarioConfig cfg = small(20);
  const auto dep = build_run_deployment(cfg, 0);
  const auto path = PathGainModel::from_config(cfg);
  const DipoleArrayConfig antenna;
  std::vector<double> xs, ys;
  for (const auto& u : dep.ues) {
    xs.push_back(u.x_m);
    ys.push_back(u.y_m);
  }
  const ShadowField shadow(xs, ys, ShadowField::Params{}, 4);
  const auto gains = kernels::gain_matrix_serial({dep.sites, dep.ues, cfg.ue_height_m, &path, &antenna, &shadow});
  const auto rc = RadioConstants::from_config(cfg);
  const auto a = associate(kernels::rx_power_serial(gains, std::vector<double>(dep.sites.size(), 0.0)), true, rc);
  const auto b = associate(kernels::rx_power_serial(gains, std::vector<double>(dep.sites.size(), 17.0)), true, rc);
  CHECK(a.serving == b.serving);
  CHECK(a.active == b.active);
  for (std::size_t u = 0; u < dep.ues.size(); ++u)
    if (a.is_served(u)) CHECK(a.pilot_sinr_db[u] >= cfg.pilot_sinr_floor_db);
}

TEST_CASE("network transmit power per km2 falls with densification below ISD 100") {
  double prev = 1e300;
  for (double isd : {100.0, 75.0, 50.0, 35.0, 20.0, 10.0, 5.0}) {
    ScenarioConfig cfg = small(isd);
    cfg.runs = 10;
    const double p = aggregate(execute_runs(cfg)).network_tx_power_dbm_per_km2;
    CHECK(p <= prev);
    prev = p;
  }
}
