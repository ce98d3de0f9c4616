#include <benchmark/benchmark.h>

#include "crossbench/codec.hpp"
#include "crossbench/generator.hpp"

namespace cb = crossbench;

namespace {

const cb::Event& sample_event() {
  static const cb::Event e = cb::generate_event(1, 0, 1);
  return e;
}

void BM_EncodeRows(benchmark::State& state) {
  const auto& hits = *sample_event().calo_hits;
  const bool widen = state.range(0) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(cb::encode_row(hits, widen));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(hits.size()));
}
BENCHMARK(BM_EncodeRows)->Arg(0)->Arg(1);

void BM_EncodeColumns(benchmark::State& state) {
  const auto& hits = *sample_event().calo_hits;
  for (auto _ : state) benchmark::DoNotOptimize(cb::encode_columns(hits));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(hits.size()));
}
BENCHMARK(BM_EncodeColumns);

void BM_Compress(benchmark::State& state) {
  const auto block = cb::encode_row(*sample_event().track_hits, false);
  const int level = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cb::compress(block.bytes, level));
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(block.bytes.size()));
}
BENCHMARK(BM_Compress)->Arg(0)->Arg(1)->Arg(6)->Arg(9);

void BM_Decompress(benchmark::State& state) {
  const auto raw = cb::encode_row(*sample_event().track_hits, false);
  const auto block = cb::compress(raw.bytes, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(cb::decompress(block));
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(raw.bytes.size()));
}
BENCHMARK(BM_Decompress)->Arg(0)->Arg(1)->Arg(9);

}  // namespace

BENCHMARK_MAIN();
