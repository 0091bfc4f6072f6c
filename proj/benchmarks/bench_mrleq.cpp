#include <benchmark/benchmark.h>

#include <numbers>

#include "mrleq/distribution.hpp"
#include "mrleq/equilibrium.hpp"
#include "mrleq/oracle.hpp"
#include "mrleq/reliability.hpp"

namespace {

using namespace mrleq;

void BM_SolveUniform(benchmark::State& state) {
  auto d = make_uniform(0.0, 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(solve_wholesale_price(d).r_star);
}
BENCHMARK(BM_SolveUniform)->Unit(benchmark::kMillisecond);

void BM_SolveSinusoid(benchmark::State& state) {
  auto d = make_sinusoid({std::numbers::pi, 0.8, 1.2});
  for (auto _ : state) benchmark::DoNotOptimize(solve_wholesale_price(d).r_star);
}
BENCHMARK(BM_SolveSinusoid)->Unit(benchmark::kMillisecond);

void BM_SolveTruncatedNormal(benchmark::State& state) {
  auto d = make_truncated_normal(1.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(solve_wholesale_price(d).r_star);
}
BENCHMARK(BM_SolveTruncatedNormal)->Unit(benchmark::kMillisecond);

// Mean residual life through the generic tail table (transformed model).
void BM_MrlTransformed(benchmark::State& state) {
  auto d = transform_increasing(make_exponential(1.0), MonotoneMap::power(1.5));
  mrl(*d, 1.0);  // build the table outside the loop
  double r = 0.0;
  for (auto _ : state) {
    r = r > 5.0 ? 0.01 : r + 0.01;
    benchmark::DoNotOptimize(mrl(*d, r));
  }
}
BENCHMARK(BM_MrlTransformed);

void BM_ConvolutionBuild(benchmark::State& state) {
  auto x = make_exponential(1.0);
  auto z = make_uniform(0.0, 1.0);
  ConvolutionOptions opts;
  opts.knots = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(convolve(x, z, opts));
}
BENCHMARK(BM_ConvolutionBuild)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);

void BM_OracleArgmax(benchmark::State& state) {
  auto d = make_truncated_normal(1.0, 1.0);
  auto grid = oracle_grid(*d, 4000);
  for (auto _ : state) benchmark::DoNotOptimize(argmax_grid(*d, 2, grid).r_hat);
}
BENCHMARK(BM_OracleArgmax)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
