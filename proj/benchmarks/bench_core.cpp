#include <benchmark/benchmark.h>

#include <vector>

#include "openrcd/allocation.hpp"
#include "openrcd/opensim.hpp"
#include "openrcd/rcd.hpp"
#include "openrcd/worstcase.hpp"

namespace {

using namespace openrcd;

std::vector<QuadraticFunction> roster(std::size_t n, const ConvexityCertificate& cert) {
  Rng rng = make_rng(1);
  std::vector<QuadraticFunction> fs;
  for (std::size_t i = 0; i < n; ++i) fs.push_back(sample_replacement(rng, cert));
  return fs;
}

void BM_PairStep(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const ConvexityCertificate cert(1.0, 2.0);
  const auto fs = roster(n, cert);
  const auto step = StepConfig::standard(cert);
  std::vector<double> x(n, 0.0);
  Rng rng = make_rng(2);
  for (auto _ : state) {
    apply_pair_step<QuadraticFunction>(x, fs, sample_edge(rng, n), step);
    benchmark::DoNotOptimize(x.data());
  }
}
BENCHMARK(BM_PairStep)->Arg(5)->Arg(100);

void BM_ClosedForm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto fs = roster(n, ConvexityCertificate(1.0, 3.0));
  std::vector<double> out(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(closed_form_quadratic_minimizer(fs, 1.0, out));
  }
}
BENCHMARK(BM_ClosedForm)->Arg(5)->Arg(100)->Arg(1000);

void BM_DualBisection(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const ConvexityCertificate cert(1.0, 3.0);
  Rng rng = make_rng(3);
  std::vector<SmoothFunction> fs;
  for (std::size_t i = 0; i < n; ++i) {
    fs.push_back(SmoothFunction::wrap(sample_logcosh_replacement(rng, cert), cert));
  }
  for (auto _ : state) benchmark::DoNotOptimize(dual_bisection_minimizer(fs, 1.0));
}
BENCHMARK(BM_DualBisection)->Arg(5)->Arg(50);

void BM_Trajectory(benchmark::State& state) {
  ExperimentConfig cfg = ExperimentConfig::fig1();
  cfg.replications = 1;
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(run_trajectory(cfg, seed++));
}
BENCHMARK(BM_Trajectory);

void BM_Displacement(benchmark::State& state) {
  const ConvexityCertificate cert(1.0, 5.0);
  const auto fs = roster(10, cert);
  const ReplacementInstance inst{{fs.begin(), fs.end() - 1}, fs.back(), fs.front(), 1.0};
  for (auto _ : state) benchmark::DoNotOptimize(displacement(inst));
}
BENCHMARK(BM_Displacement);

void BM_MaximizeDisplacement(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(maximize_displacement(n, 5.0, 1.0, 50));
}
BENCHMARK(BM_MaximizeDisplacement)->Arg(4)->Arg(12)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
