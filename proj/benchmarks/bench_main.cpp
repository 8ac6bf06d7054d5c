#include <benchmark/benchmark.h>

#include "relwb/amalgam.hpp"
#include "relwb/canonical.hpp"
#include "relwb/corpus.hpp"
#include "relwb/ramsey.hpp"

using namespace relwb;

namespace {

Structure corpus(const char* name) { return *find_corpus_structure(name); }

void BM_HomSearch(benchmark::State& state) {
  const auto y = five_universal_graph();
  const auto k3 = corpus("K3");
  for (auto _ : state) benchmark::DoNotOptimize(find_morphism(y, k3, MorphismKind::homomorphism));
}
BENCHMARK(BM_HomSearch);

void BM_EmbeddingSearch(benchmark::State& state) {
  const auto y = five_universal_graph();
  const auto c5 = corpus("C5");
  for (auto _ : state) benchmark::DoNotOptimize(find_morphism(c5, y, MorphismKind::embedding));
}
BENCHMARK(BM_EmbeddingSearch);

void BM_ComputeCore(benchmark::State& state) {
  const auto y = five_universal_graph();
  for (auto _ : state) benchmark::DoNotOptimize(compute_core(y));
}
BENCHMARK(BM_ComputeCore);

void BM_EnumerateAge(benchmark::State& state) {
  const auto& c = get_class("triangle-free-graphs").cls;
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_age(c, n));
}
BENCHMARK(BM_EnumerateAge)->DenseRange(3, 6);

void BM_CheckAp(benchmark::State& state) {
  const auto& c = get_class("partial-orders").cls;
  for (auto _ : state) benchmark::DoNotOptimize(check_ap(c, 3, 6));
}
BENCHMARK(BM_CheckAp);

void BM_BadColoring(benchmark::State& state) {
  const auto h = corpus("5-chain");
  const auto s = corpus("2-chain");
  const auto f = corpus("3-chain");
  for (auto _ : state) benchmark::DoNotOptimize(find_bad_coloring(h, s, f, 2));
}
BENCHMARK(BM_BadColoring);

void BM_Canonicity(benchmark::State& state) {
  const auto& e = get_class("two-colored-orders");
  const auto g = e.map("recolor-to-0").make(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(is_canonical(g, 2));
}
BENCHMARK(BM_Canonicity)->RangeMultiplier(2)->Range(8, 64);

void BM_RangeRigidity(benchmark::State& state) {
  const auto& e = get_class("isolated-U");
  const auto g = e.map("shift-to-unmarked").make(3);
  for (auto _ : state) benchmark::DoNotOptimize(is_range_rigid(g, 2));
}
BENCHMARK(BM_RangeRigidity);

}  // namespace

BENCHMARK_MAIN();
