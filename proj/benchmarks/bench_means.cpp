#include <benchmark/benchmark.h>

#include "pdmeans/pdmeans.hpp"

namespace {

using namespace pdmeans;

struct Instance {
  WeightVector w;
  PDTuple tuple;
};

Instance make_instance(int dim, int n, double cond) {
  Rng rng(0x5eed0000u + static_cast<std::uint64_t>(dim * 31 + n));
  std::vector<PDMatrix> items;
  for (int j = 0; j < n; ++j) items.push_back(random_pd(rng, dim, cond));
  return {WeightVector(random_weights(rng, n)), PDTuple(std::move(items))};
}

void BM_Mpow(benchmark::State& state) {
  const PDMatrix a = random_pd(1, static_cast<int>(state.range(0)), 1e3);
  for (auto _ : state) benchmark::DoNotOptimize(mpow(a, 0.37));
}
BENCHMARK(BM_Mpow)->Arg(2)->Arg(4)->Arg(9)->Arg(16);

void BM_Phi(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  const PDMatrix a = random_pd(2, dim, 1e3);
  const PDMatrix b = random_pd(3, dim, 1e3);
  const AlphaZ p(0.3, 0.6);
  for (auto _ : state) benchmark::DoNotOptimize(phi_alpha_z(p, a, b));
}
BENCHMARK(BM_Phi)->Arg(2)->Arg(4)->Arg(9);

void BM_RightMean(benchmark::State& state) {
  const Instance in = make_instance(static_cast<int>(state.range(0)), 5, 1e3);
  const AlphaZ p(state.range(1) / 100.0, state.range(2) / 100.0);
  int iterations = 0;
  for (auto _ : state) {
    MeanResult r = right_mean(p, in.w, in.tuple);
    iterations = r.report.iterations;
    benchmark::DoNotOptimize(r.value);
  }
  state.counters["iterations"] = iterations;
}
// One (alpha, z) per region: A, B, C.
BENCHMARK(BM_RightMean)->Args({4, 20, 90})->Args({4, 20, 60})->Args({4, 30, 40});

void BM_PowerMean(benchmark::State& state) {
  const Instance in = make_instance(4, 5, 1e3);
  const double t = state.range(0) / 100.0;
  for (auto _ : state) benchmark::DoNotOptimize(power_mean(t, in.w, in.tuple).value);
}
BENCHMARK(BM_PowerMean)->Arg(-50)->Arg(5)->Arg(50);

void BM_CartanMean(benchmark::State& state) {
  const Instance in = make_instance(static_cast<int>(state.range(0)), 5, 1e3);
  for (auto _ : state) benchmark::DoNotOptimize(cartan_mean(in.w, in.tuple).value);
}
BENCHMARK(BM_CartanMean)->Arg(2)->Arg(4);

void BM_WassersteinMean(benchmark::State& state) {
  const Instance in = make_instance(static_cast<int>(state.range(0)), 5, 1e3);
  int iterations = 0;
  for (auto _ : state) {
    WassersteinResult r = wasserstein_mean(in.w, in.tuple);
    iterations = r.report.iterations;
    benchmark::DoNotOptimize(r.value);
  }
  state.counters["iterations"] = iterations;
}
BENCHMARK(BM_WassersteinMean)->Arg(2)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
