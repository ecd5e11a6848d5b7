#include <benchmark/benchmark.h>

#include <vector>

#include "dri/score/scorer.hpp"
#include "formula_gen.hpp"

namespace {

struct Item {
  dri::extract::LogicalElements elements;
  dri::extract::OptionAnalyses analyses;
};

std::vector<Item> corpus(std::size_t n) {
  dri::Rng rng(11);
  std::vector<Item> out;
  for (std::size_t i = 0; i < n; ++i)
    out.push_back({dri::testing::random_elements(rng), dri::testing::random_analyses(rng)});
  return out;
}

void BM_RawScore(benchmark::State& state) {
  const auto items = corpus(256);
  for (auto _ : state)
    for (const auto& it : items) benchmark::DoNotOptimize(dri::score::raw_breakdown("b", it.elements, it.analyses));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(items.size()));
}
BENCHMARK(BM_RawScore);

void BM_FitAndNormalize(benchmark::State& state) {
  dri::Rng rng(12);
  std::vector<double> raw(static_cast<std::size_t>(state.range(0)));
  for (auto& r : raw) r = 1000.0 * dri::uniform_unit(rng);
  for (auto _ : state) {
    const auto stats = dri::score::fit_stats(raw);
    double acc = 0;
    for (double r : raw) acc += dri::score::normalize(r, stats);
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FitAndNormalize)->Range(1 << 10, 1 << 18);

}  // namespace

BENCHMARK_MAIN();
