#include <benchmark/benchmark.h>

#include "ooklight/analytic.hpp"
#include "ooklight/montecarlo.hpp"
#include "ooklight/optimize.hpp"
#include "ooklight/photon_stats.hpp"

namespace {

using namespace ooklight;

void BM_LambertW(benchmark::State& state) {
  double x = 1e-6;
  for (auto _ : state) {
    benchmark::DoNotOptimize(lambert_w0(x));
    x = x < 1e8 ? x * 1.37 : 1e-6;
  }
}
BENCHMARK(BM_LambertW);

void BM_FockNoCount(benchmark::State& state) {
  const PhotonSource source = PhotonSource::fock_mixture(7.3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(source.no_count_exact(0.37));
  }
}
BENCHMARK(BM_FockNoCount);

void BM_OptimizePoissonPpm(benchmark::State& state) {
  for (auto _ : state) {
    const RateResult result = optimize_rate(
        default_problem(Scheme::PPM, SourceFamily::Poisson, 0.01, ChannelParams(1.0, 0.0)));
    benchmark::DoNotOptimize(result.mi_per_bin);
  }
}
BENCHMARK(BM_OptimizePoissonPpm);

void BM_OptimizeFockOok(benchmark::State& state) {
  for (auto _ : state) {
    const RateResult result = optimize_rate(default_problem(
        Scheme::OOK, SourceFamily::FockMixture, 0.05, ChannelParams(0.5, 0.0)));
    benchmark::DoNotOptimize(result.mi_per_bin);
  }
}
BENCHMARK(BM_OptimizeFockOok);

void BM_MonteCarloNoCount(benchmark::State& state) {
  const McConfig config{PhotonSource::fock_mixture(1.5), ChannelParams(0.25, 0.05),
                        state.range(0), kDefaultSeed};
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimate_no_count(config).eps_hat);
  }
}
BENCHMARK(BM_MonteCarloNoCount)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
