#include <benchmark/benchmark.h>

#include "streamkl/bounds.hpp"
#include "streamkl/collision.hpp"
#include "streamkl/entropy.hpp"
#include "streamkl/monte_carlo.hpp"
#include "streamkl/oracle.hpp"

namespace {

using namespace streamkl;

void BM_BinaryEntropyInverse(benchmark::State& state) {
  double t = 0.31;
  for (auto _ : state) {
    benchmark::DoNotOptimize(binary_entropy_inverse(t));
  }
}
BENCHMARK(BM_BinaryEntropyInverse);

void BM_NextDrawInfoBound(benchmark::State& state) {
  const int64_t n = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(next_draw_info_bound(n, n / 3, 12.0));
  }
}
BENCHMARK(BM_NextDrawInfoBound)->Arg(64)->Arg(1024)->Arg(1 << 16);

void BM_CollisionStream(benchmark::State& state) {
  const int q = static_cast<int>(state.range(0));
  MemoryProfile profile{int64_t{1} << 20, std::vector<int>(q, 64)};
  auto alg = make_collision_algorithm(profile);
  auto x = sample_with_replacement(profile.n, q, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_stream(*alg, x));
  }
  state.SetItemsProcessed(state.iterations() * q);
}
BENCHMARK(BM_CollisionStream)->Arg(64)->Arg(1024);

void BM_SampleWithoutReplacement(benchmark::State& state) {
  const int64_t n = state.range(0);
  const int q = static_cast<int>(state.range(1));
  uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_without_replacement(n, q, ++seed));
  }
  state.SetItemsProcessed(state.iterations() * q);
}
BENCHMARK(BM_SampleWithoutReplacement)
    ->Args({1 << 20, 1 << 10})   // sparse: rejection
    ->Args({1 << 10, 1 << 9});   // dense: partial shuffle

void BM_EnumerateCollision(benchmark::State& state) {
  MemoryProfile profile{8, {4, 4, 4, 4}};
  auto alg = make_collision_algorithm(profile);
  for (auto _ : state) {
    benchmark::DoNotOptimize(enumerate_distributions(*alg));
  }
}
BENCHMARK(BM_EnumerateCollision);

void BM_EstimateAccept(benchmark::State& state) {
  MemoryProfile profile{1 << 16, std::vector<int>(64, 17)};
  auto alg = make_collision_algorithm(profile);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        estimate_accept(*alg, Source::with_replacement, 1000, 3));
  }
  state.SetItemsProcessed(state.iterations() * 1000 * 64);
}
BENCHMARK(BM_EstimateAccept);

}  // namespace

BENCHMARK_MAIN();
