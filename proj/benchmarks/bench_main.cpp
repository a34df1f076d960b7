#include <benchmark/benchmark.h>

#include <cmath>
#include <complex>
#include <vector>

#include "sfd/fpe.hpp"
#include "sfd/fraccalc.hpp"
#include "sfd/gle.hpp"
#include "sfd/laplace.hpp"
#include "sfd/mlf.hpp"
#include "sfd/simulate.hpp"

namespace {

// Arguments chosen so ml_evaluate picks each route in turn.
void BM_MlTaylor(benchmark::State& state) {
  const sfd::MLOrder order(0.5, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(sfd::ml_eval(order, -0.5));
}
BENCHMARK(BM_MlTaylor);

void BM_MlAsymptotic(benchmark::State& state) {
  const sfd::MLOrder order(0.5, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(sfd::ml_eval(order, -40.0));
}
BENCHMARK(BM_MlAsymptotic);

void BM_MlIntegral(benchmark::State& state) {
  const sfd::MLOrder order(0.9, 1.9);
  for (auto _ : state) benchmark::DoNotOptimize(sfd::ml_eval(order, -15.0));
}
BENCHMARK(BM_MlIntegral);

void BM_Talbot(benchmark::State& state) {
  const sfd::TransferSpec spec{0.5, 0.5, 0.1, 1.0, false, false};
  const int nodes = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sfd::invert_at(spec, 1.0, nodes));
}
BENCHMARK(BM_Talbot)->Arg(32)->Arg(64)->Arg(128);

void BM_GleMsd(benchmark::State& state) {
  sfd::GleParams p;
  p.alpha = 0.75;
  p.gamma = 0.5;
  p.lambda2 = 1.0;
  for (auto _ : state) benchmark::DoNotOptimize(sfd::msd(p, 10.0));
}
BENCHMARK(BM_GleMsd);

void BM_FracIntegralGrid(benchmark::State& state) {
  sfd::SampledFunction f{0.0, 1e-3, std::vector<double>(static_cast<std::size_t>(state.range(0)))};
  for (std::size_t i = 0; i < f.size(); ++i) f.values[i] = std::sin(f.time(i));
  for (auto _ : state) benchmark::DoNotOptimize(sfd::frac_integral_grid(f, 0.5));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FracIntegralGrid)->RangeMultiplier(4)->Range(256, 16384)->Complexity();

void BM_SampleNoise(benchmark::State& state) {
  const sfd::NoiseSpec spec{0.0, 1.0, 0.5, 1.0};
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sfd::sample_noise(spec, 1e-2, n, 7));
  state.SetComplexityN(n);
}
BENCHMARK(BM_SampleNoise)->RangeMultiplier(4)->Range(256, 16384)->Complexity();

void BM_SimulatePaths(benchmark::State& state) {
  sfd::GleParams p;
  p.overdamped = true;
  p.lambda1 = 1.0;
  p.lambda2 = 1.0;
  p.gamma = 0.5;
  sfd::SimulateOptions opts;
  opts.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(sfd::simulate_paths(p, 1e-2, 1000, 100, 2024, opts));
  state.SetItemsProcessed(state.iterations() * 100);
}
BENCHMARK(BM_SimulatePaths)->Unit(benchmark::kMillisecond);

void BM_SolveFpe(benchmark::State& state) {
  const int nx = static_cast<int>(state.range(0));
  const std::vector<double> times{1.0, 10.0, 100.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(sfd::solve_fpe(1.0, 1.0, 60.0, nx, times, sfd::DiffusionVariant::matched));
  }
}
BENCHMARK(BM_SolveFpe)->Arg(801)->Arg(3201)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
