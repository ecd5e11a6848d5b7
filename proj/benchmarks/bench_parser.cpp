#include <benchmark/benchmark.h>

#include "dri/logic/metrics.hpp"
#include "dri/logic/parser.hpp"
#include "dri/logic/printer.hpp"
#include "formula_gen.hpp"

namespace {

std::vector<std::string> corpus(dri::logic::Notation notation) {
  dri::Rng rng(7);
  std::vector<std::string> out;
  for (int i = 0; i < 512; ++i) out.push_back(dri::logic::to_string(dri::testing::random_formula(rng), notation));
  return out;
}

void BM_Parse(benchmark::State& state) {
  const auto texts = corpus(static_cast<dri::logic::Notation>(state.range(0)));
  std::size_t bytes = 0;
  for (const auto& t : texts) bytes += t.size();
  for (auto _ : state)
    for (const auto& t : texts) benchmark::DoNotOptimize(dri::logic::parse_formula(t));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(texts.size()));
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(bytes));
}
BENCHMARK(BM_Parse)->Arg(0)->Arg(1)->Arg(2)->ArgName("notation");

void BM_Measure(benchmark::State& state) {
  dri::Rng rng(8);
  std::vector<dri::logic::Formula> fs;
  for (int i = 0; i < 512; ++i) fs.push_back(dri::testing::random_formula(rng));
  for (auto _ : state)
    for (const auto& f : fs) benchmark::DoNotOptimize(dri::logic::measure(f, true));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(fs.size()));
}
BENCHMARK(BM_Measure);

}  // namespace

BENCHMARK_MAIN();
