#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>

#include "udn/energy.hpp"
#include "udn/runner.hpp"

namespace udn {

namespace {

namespace fs = std::filesystem;

// Scenario flags shared by every subcommand, kept as text so that
// apply_setting() is the single parser for files and flags alike.
struct ScenarioFlags {
  std::vector<std::pair<std::string, std::optional<std::string>>> values{
      {"isd", {}},         {"ue-density", {}},   {"ue-dist", {}},       {"idle", {}},
      {"sleep-model", {}}, {"carrier-ghz", {}},  {"bandwidth-hz", {}},  {"antennas", {}},
      {"target-snr-db", {}}, {"runs", {}},       {"seed", {}},
  };
  std::vector<std::string> extra;  // --set key=value
  std::string config_file;
  std::string out_dir = "out";

  void attach(CLI::App* app) {
    for (auto& [name, value] : values) {
      auto* opt = app->add_option("--" + name, value);
      if (name == "ue-dist") opt->check(CLI::IsMember({"uniform", "hotspot"}));
      if (name == "idle") opt->check(CLI::IsMember({"on", "off"}));
      if (name == "sleep-model") opt->check(CLI::IsMember({"1", "2", "3", "4", "5"}));
      if (name == "antennas") opt->check(CLI::IsMember({"1", "2", "4"}));
      if (name == "target-snr-db") opt->check(CLI::IsMember({"9", "12", "15"}));
    }
    app->add_option("--config", config_file, "key = value file; flags override it")->check(CLI::ExistingFile);
    app->add_option("--set", extra, "extra key=value override (repeatable)");
    app->add_option("--out", out_dir, "output directory");
  }

  bool has(const std::string& name) const {
    for (const auto& [n, v] : values)
      if (n == name) return v.has_value();
    return false;
  }

  ScenarioConfig build() const {
    ScenarioConfig cfg;
    auto apply = [&](const std::string& k, const std::string& v) {
      if (!apply_setting(cfg, k, v)) throw CLI::ValidationError(k, "unknown setting");
    };
    if (!config_file.empty())
      for (const auto& [k, v] : read_key_value_file(config_file)) apply(k, v);
    for (const auto& [name, value] : values)
      if (value) apply(name, *value);
    for (const auto& kv : extra) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw CLI::ValidationError("--set", "expected key=value, got '" + kv + "'");
      apply(kv.substr(0, eq), kv.substr(eq + 1));
    }
    return cfg;
  }
};

std::ofstream open_out(const fs::path& dir, const std::string& name) {
  fs::create_directories(dir);
  std::ofstream os(dir / name);
  if (!os) throw std::runtime_error("cannot write " + (dir / name).string());
  return os;
}

void print_notes(const ScenarioConfig& cfg) {
  for (const auto& note : validate(cfg)) std::cerr << "note: " << note << "\n";
}

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace

int cli_main(int argc, char** argv) {
  CLI::App app{"Monte-Carlo simulator for ultra-dense small-cell networks", "udnsim"};
  app.require_subcommand(1);

  ScenarioFlags flags;
  auto* simulate = app.add_subcommand("simulate", "run one configuration");
  flags.attach(simulate);

  std::string sweep_file;
  auto* sweep = app.add_subcommand("sweep", "run the cross product of a sweep file");
  sweep->add_option("spec", sweep_file, "sweep file: key = v1, v2, ...")->required()->check(CLI::ExistingFile);
  flags.attach(sweep);

  SchedStudyOptions sched_opts;
  auto* sched = app.add_subcommand("sched-study", "round robin vs proportional fair");
  sched->add_option("--isds", sched_opts.isds_m)->delimiter(',');
  sched->add_option("--ues-per-bs", sched_opts.ues_per_bs)->delimiter(',');
  sched->add_option("--drops", sched_opts.drops)->check(CLI::PositiveNumber);
  sched->add_option("--ttis", sched_opts.ttis)->check(CLI::PositiveNumber);
  flags.attach(sched);

  std::vector<double> ee_isds = kStudyIsdsM;
  std::vector<int> ee_antennas{1, 2, 4};
  auto* ee = app.add_subcommand("ee-study", "energy efficiency across ISDs, antennas and sleep models");
  ee->add_option("--isds", ee_isds)->delimiter(',');
  ee->add_option("--antenna-counts", ee_antennas)->delimiter(',');
  flags.attach(ee);

  int dump_run = 0;
  auto* dump = app.add_subcommand("dump-deployment", "write sites.csv and ues.csv for one run");
  dump->add_option("--run", dump_run)->check(CLI::NonNegativeNumber);
  flags.attach(dump);

  try {
    app.parse(argc, argv);

    auto require_isd = [&](CLI::App* sub) {
      if (!flags.has("isd") && flags.config_file.empty())
        throw UsageError(sub->get_name() + ": --isd is required when no --config file is given");
    };
    const fs::path out = flags.out_dir;

    if (simulate->parsed()) {
      require_isd(simulate);
      const ScenarioConfig cfg = flags.build();
      print_notes(cfg);
      const Summary s = aggregate(execute_runs(cfg));
      std::vector<std::pair<ScenarioConfig, Summary>> pts{{cfg, s}};
      auto os = open_out(out, "summary.csv");
      write_summary_csv(os, pts);
      auto cdf = open_out(out, "sinr_cdf.csv");
      write_sinr_cdf_csv(cdf, pts);
      std::cout << "runs=" << s.runs << " ue_samples=" << s.n_ue_samples << " mean_tput_bps=" << s.mean_ue_tput_bps
                << " p5_tput_bps=" << s.p5_ue_tput_bps << " median_sinr_db=" << s.median_sinr_db << "\n";
    } else if (sweep->parsed()) {
      const SweepSpec spec = SweepSpec::from_file(sweep_file, flags.build());
      std::vector<std::pair<ScenarioConfig, Summary>> pts(spec.point_count());
      for (std::size_t i = 0; i < pts.size(); ++i) {
        const ScenarioConfig cfg = spec.point(i);
        print_notes(cfg);
        pts[i] = {cfg, aggregate(execute_runs(cfg))};
        std::cerr << "point " << i + 1 << "/" << pts.size() << " done\n";
      }
      auto os = open_out(out, "summary.csv");
      write_summary_csv(os, pts);
      auto cdf = open_out(out, "sinr_cdf.csv");
      write_sinr_cdf_csv(cdf, pts);
      std::cout << "points=" << pts.size() << "\n";
    } else if (sched->parsed()) {
      ScenarioConfig cfg = flags.build();
      if (!flags.has("bandwidth-hz") && !cfg.bandwidth_override_hz) cfg.bandwidth_override_hz = 20e6;
      print_notes(cfg);
      const auto rows = run_scheduler_study(cfg, sched_opts);
      auto os = open_out(out, "sched.csv");
      write_sched_csv(os, cfg, rows);
      std::cout << "rows=" << rows.size() << "\n";
    } else if (ee->parsed()) {
      ScenarioConfig cfg = flags.build();
      if (!flags.has("bandwidth-hz") && !cfg.bandwidth_override_hz) cfg.bandwidth_override_hz = 20e6;
      for (double isd : ee_isds)
        for (int a : ee_antennas)
          if (!PowerTable::standard().has_row(isd, a))
            throw UsageError("ee-study: no power-model row for isd " + std::to_string(isd) + " with " +
                             std::to_string(a) + " antennas");
      print_notes(cfg);
      const auto rows = run_ee_study(cfg, ee_isds, ee_antennas);
      auto os = open_out(out, "ee.csv");
      write_ee_csv(os, cfg, rows);
      std::cout << "rows=" << rows.size() << "\n";
    } else if (dump->parsed()) {
      require_isd(dump);
      const ScenarioConfig cfg = flags.build();
      validate(cfg);
      const Deployment dep = build_run_deployment(cfg, dump_run);
      auto sites = open_out(out, "sites.csv");
      auto ues = open_out(out, "ues.csv");
      write_deployment_csv(sites, ues, dep);
      std::cout << "sites=" << dep.sites.size() << " ues=" << dep.ues.size() << "\n";
    }
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << e.what() << "\n\n" << app.help();
    return 2;
  } catch (const UsageError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace udn
