#include <benchmark/benchmark.h>

#include "crossbench/containers.hpp"
#include "crossbench/event_model.hpp"

namespace cb = crossbench;

namespace {

// Refills one container the way a folder is refilled before every read.
void BM_Refill(benchmark::State& state) {
  const auto kind = cb::kAllContainerKinds[static_cast<std::size_t>(state.range(0))];
  const auto n = static_cast<std::size_t>(state.range(1));
  auto seq = cb::make_sequence<cb::CaloHit>(kind);
  cb::CaloHit h{};
  for (auto _ : state) {
    seq->clear();
    for (std::size_t i = 0; i < n; ++i) {
      h.cell_id = static_cast<std::int32_t>(i);
      seq->add(h);
    }
    benchmark::DoNotOptimize(seq->size());
  }
  state.SetLabel(std::string(cb::short_name(kind)));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_Refill)->ArgsProduct({{0, 1, 2, 3}, {330, 3282}});

void BM_Iterate(benchmark::State& state) {
  const auto kind = cb::kAllContainerKinds[static_cast<std::size_t>(state.range(0))];
  auto seq = cb::make_sequence<cb::CaloHit>(kind);
  cb::CaloHit h{};
  h.energy = 1.0f;
  for (int i = 0; i < 3282; ++i) seq->add(h);
  for (auto _ : state) {
    double sum = 0;
    cb::for_each_element(*seq, [&](const cb::CaloHit& e) { sum += e.energy; });
    benchmark::DoNotOptimize(sum);
  }
  state.SetLabel(std::string(cb::short_name(kind)));
}
BENCHMARK(BM_Iterate)->DenseRange(0, 3);

}  // namespace

BENCHMARK_MAIN();
