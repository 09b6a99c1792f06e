// Serial reference vs OpenMP kernels on one ISD-10 m run.
#include <benchmark/benchmark.h>

#include <memory>

#include "udn/kernels.hpp"
#include "udn/link.hpp"
#include "udn/runner.hpp"

namespace {

using namespace udn;

struct Fixture {
  ScenarioConfig cfg;
  Deployment dep;
  PathGainModel path;
  DipoleArrayConfig antenna;
  std::unique_ptr<ShadowField> shadow;
  kernels::GainMatrix gains;
  RxPowerMatrix rx;
  AssociationState st;
  std::vector<BeamWeights> beams;
  double noise = 0;

  explicit Fixture(double isd, int antennas) {
    cfg.isd_m = isd;
    cfg.num_bs_antennas = antennas;
    antenna.n_horizontal = antennas;
    dep = build_run_deployment(cfg, 0);
    path = PathGainModel::from_config(cfg);
    std::vector<double> xs, ys;
    for (const auto& u : dep.ues) {
      xs.push_back(u.x_m);
      ys.push_back(u.y_m);
    }
    shadow = std::make_unique<ShadowField>(xs, ys, ShadowField::Params{}, 1);
    gains = kernels::gain_matrix_serial(inputs());
    const std::vector<double> tx(dep.sites.size(), 0.0);
    rx = kernels::rx_power_serial(gains, tx);
    const auto rc = RadioConstants::from_config(cfg);
    noise = rc.noise_power_mw();
    st = associate(rx, true, rc);
    beams = kernels::select_beams(beam_inputs(), st);
  }
  kernels::GainInputs inputs() const { return {dep.sites, dep.ues, cfg.ue_height_m, &path, &antenna, shadow.get()}; }
  kernels::BeamInputs beam_inputs() const { return {dep.sites, dep.ues, cfg.num_bs_antennas, 0.6}; }
};

Fixture& fixture(int antennas) {
  static Fixture one(10, 1), four(10, 4);
  return antennas == 1 ? one : four;
}

void BM_GainSerial(benchmark::State& s) {
  auto& f = fixture(1);
  for (auto _ : s) benchmark::DoNotOptimize(kernels::gain_matrix_serial(f.inputs()));
}
void BM_GainParallel(benchmark::State& s) {
  auto& f = fixture(1);
  for (auto _ : s) benchmark::DoNotOptimize(kernels::gain_matrix_parallel(f.inputs()));
}
void BM_RxSerial(benchmark::State& s) {
  auto& f = fixture(1);
  const std::vector<double> tx(f.dep.sites.size(), 3.0);
  for (auto _ : s) benchmark::DoNotOptimize(kernels::rx_power_serial(f.gains, tx));
}
void BM_RxParallel(benchmark::State& s) {
  auto& f = fixture(1);
  const std::vector<double> tx(f.dep.sites.size(), 3.0);
  for (auto _ : s) benchmark::DoNotOptimize(kernels::rx_power_parallel(f.gains, tx));
}
void BM_SinrSerial(benchmark::State& s) {
  auto& f = fixture(static_cast<int>(s.range(0)));
  for (auto _ : s) benchmark::DoNotOptimize(kernels::data_sinr_serial(f.rx, f.st, f.beams, f.beam_inputs(), f.noise));
}
void BM_SinrParallel(benchmark::State& s) {
  auto& f = fixture(static_cast<int>(s.range(0)));
  for (auto _ : s) benchmark::DoNotOptimize(kernels::data_sinr_parallel(f.rx, f.st, f.beams, f.beam_inputs(), f.noise));
}

}  // namespace

BENCHMARK(BM_GainSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GainParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RxSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RxParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SinrSerial)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SinrParallel)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
