#include <benchmark/benchmark.h>

#include "crossmod/corpus.hpp"
#include "crossmod/kwb.hpp"
#include "crossmod/presentation.hpp"

using namespace crossmod;

namespace {

// Arguments: example index, coefficient index, jobs.
void apply_grid(benchmark::internal::Benchmark* b) {
  b->ArgNames({"example", "cm", "jobs"});
  const auto examples = static_cast<int>(list_examples().size());
  const auto coefficients = static_cast<int>(list_coefficients().size());
  for (int e = 0; e < examples; ++e)
    for (int c = 0; c < coefficients; ++c) b->Args({e, c, 1});
  for (int jobs : {2, 4}) b->Args({4, 1, jobs});
}

struct Case {
  Example example;
  FiniteCrossedModule cm;
  CountOptions options;
};

Case make_case(const benchmark::State& state) {
  const auto& info = list_examples().at(static_cast<std::size_t>(state.range(0)));
  const auto& cm = list_coefficients().at(static_cast<std::size_t>(state.range(1)));
  return {load_example(info.name), builtin_coefficient(cm.name), {static_cast<unsigned>(state.range(2))}};
}

void BM_CountColorings(benchmark::State& state) {
  const Case c = make_case(state);
  state.SetLabel(c.example.name);
  for (auto _ : state) benchmark::DoNotOptimize(count_colorings(c.example.diagram, c.cm, c.options));
}
BENCHMARK(BM_CountColorings)->Apply(apply_grid);

void BM_CountHoms(benchmark::State& state) {
  const Case c = make_case(state);
  state.SetLabel(c.example.name);
  for (auto _ : state) benchmark::DoNotOptimize(count_homs(c.example.presentation, c.cm, c.options));
}
BENCHMARK(BM_CountHoms)->Apply(apply_grid);

void BM_ExtractPresentation(benchmark::State& state) {
  const auto ex = load_example(list_examples().at(static_cast<std::size_t>(state.range(0))).name);
  state.SetLabel(ex.name);
  for (auto _ : state) benchmark::DoNotOptimize(extract_presentation(ex.diagram));
}
BENCHMARK(BM_ExtractPresentation)->DenseRange(0, 7);

void BM_StabilizedCount(benchmark::State& state) {
  auto p = load_example("spun_hopf").presentation;
  for (int k = 0; k < state.range(0); ++k) p = stabilize(p);
  const auto cm = builtin_coefficient("conj_S3");
  for (auto _ : state) benchmark::DoNotOptimize(count_homs(p, cm));
}
BENCHMARK(BM_StabilizedCount)->DenseRange(0, 3);

}  // namespace

BENCHMARK_MAIN();
