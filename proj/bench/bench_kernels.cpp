#include <benchmark/benchmark.h>
#include <omp.h>

#include "copclust/clustering.hpp"
#include "copclust/coefficients.hpp"
#include "copclust/copula_models.hpp"
#include "copclust/pseudo_obs.hpp"
#include "copclust/simharness.hpp"

using namespace copclust;

namespace {

struct Input {
  PseudoSample pseudo;
  std::vector<MultiIndex> idx;
};

Input make_input(std::size_t n, int p, int d_max) {
  const auto m = sample(CopulaSpec{Family::clayton, 0.5, p, 4.0}, n, 1);
  return {pseudo_observations(m), enumerate_up_to_degree(d_max, p)};
}

void BM_EstimateSerial(benchmark::State& state) {
  const auto in = make_input(state.range(0), static_cast<int>(state.range(1)), 4);
  for (auto _ : state) benchmark::DoNotOptimize(estimate_serial(in.pseudo, in.idx, true));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_EstimateParallel(benchmark::State& state) {
  const auto in = make_input(state.range(0), static_cast<int>(state.range(1)), 4);
  for (auto _ : state) benchmark::DoNotOptimize(estimate(in.pseudo, in.idx, true));
  state.SetItemsProcessed(state.iterations() * state.range(0));
  state.counters["threads"] = omp_get_max_threads();
}

void BM_DesignReplicates(benchmark::State& state) {
  auto spec = builtin_design("A100");
  spec.replicates = static_cast<std::size_t>(state.range(0));
  const int threads = state.range(1) > 0 ? static_cast<int>(state.range(1)) : omp_get_num_procs();
  omp_set_num_threads(threads);
  for (auto _ : state) benchmark::DoNotOptimize(run_design(spec, PenaltyConfig{}));
  omp_set_num_threads(omp_get_num_procs());
  state.counters["threads"] = threads;
}

}  // namespace

BENCHMARK(BM_EstimateSerial)->Args({500, 2})->Args({5000, 3})->Args({20000, 4});
BENCHMARK(BM_EstimateParallel)->Args({500, 2})->Args({5000, 3})->Args({20000, 4});
BENCHMARK(BM_DesignReplicates)->Args({50, 1})->Args({50, 0})->ArgNames({"reps", "threads"});

BENCHMARK_MAIN();
