#include <benchmark/benchmark.h>

#include "blab/presentation.hpp"

namespace {

blab::Presentation maximal(int rank) {
  blab::BuildOptions o;
  o.max_rank = rank;
  return blab::build_presentation(blab::Alphabet(2), blab::ParameterSystem{}, o);
}

void BM_BuildMaximal(benchmark::State& state) {
  const int rank = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(maximal(rank));
  }
}
BENCHMARK(BM_BuildMaximal)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

void BM_ClassifyTorsion(benchmark::State& state) {
  const blab::Presentation p = maximal(6);
  const blab::Word w = {1, 2, 1, -2, 1, 2, 1, -2, 1, 2};
  for (auto _ : state) {
    benchmark::DoNotOptimize(blab::classify_torsion(w, p));
  }
}
BENCHMARK(BM_ClassifyTorsion);

void BM_BallCensus(benchmark::State& state) {
  const blab::Presentation p = maximal(6);
  const int r = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(blab::ball_census(p, r));
  }
}
BENCHMARK(BM_BallCensus)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

}  // namespace
