#include <benchmark/benchmark.h>

#include "holant/classifier.hpp"
#include "holant/fkt.hpp"
#include "holant/grid.hpp"
#include "holant/p3em.hpp"
#include "holant/plane_graph.hpp"
#include "holant/signature.hpp"

using namespace holant;

namespace {

constexpr std::uint64_t kSeed = 7;

SignatureGrid tractable_grid(int n, const Vec& f) {
  PlaneGraph g = generate_cubic_bipartite_plane(n, kSeed);
  return bipartite_grid(g, *two_coloring(g), f, {1, 0, 0, 1});
}

void BM_CountPm(benchmark::State& state) {
  PlaneGraph g = generate_cubic_plane(static_cast<int>(state.range(0)), kSeed);
  for (auto _ : state) benchmark::DoNotOptimize(count_pm(g, {}, false));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CountPm)->RangeMultiplier(2)->Range(16, 256)->Complexity();

void BM_FindP3em(benchmark::State& state) {
  PlaneGraph g = generate_cubic_plane(static_cast<int>(state.range(0)), kSeed);
  for (auto _ : state) benchmark::DoNotOptimize(find_p3em(g));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FindP3em)->RangeMultiplier(2)->Range(16, 512)->Complexity();

// One signature per tractable case; the label reports the case the classifier picked.
const std::vector<Vec> kSolveSigs = {{1, 2, 4, 8}, {1, 0, 0, 3}, {1, 0, 1, 0}, {1, 2, 2, 1}, {1, 0, -1, 2}};

void BM_Solve(benchmark::State& state) {
  const Vec& f = kSolveSigs[static_cast<std::size_t>(state.range(0))];
  SignatureGrid grid = tractable_grid(static_cast<int>(state.range(1)), f);
  int tractable_case = 0;
  for (auto _ : state) {
    SolveResult r = solve(grid);
    tractable_case = r.tractable_case;
    benchmark::DoNotOptimize(r.value);
  }
  state.SetLabel("case " + std::to_string(tractable_case));
}
BENCHMARK(BM_Solve)->ArgsProduct({{0, 1, 2, 3, 4}, {16, 64}});

void BM_EvalBruteForce(benchmark::State& state) {
  SignatureGrid grid = tractable_grid(static_cast<int>(state.range(0)), {1, 0, -1, 2});
  for (auto _ : state) benchmark::DoNotOptimize(eval(grid));
}
BENCHMARK(BM_EvalBruteForce)->DenseRange(4, 8, 2);

void BM_EvalContract(benchmark::State& state) {
  SignatureGrid grid = tractable_grid(static_cast<int>(state.range(0)), {1, 0, -1, 2});
  for (auto _ : state) benchmark::DoNotOptimize(eval_contract(grid));
}
BENCHMARK(BM_EvalContract)->DenseRange(4, 16, 4);

}  // namespace
BENCHMARK_MAIN();
