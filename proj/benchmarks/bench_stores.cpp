#include <benchmark/benchmark.h>

#include <filesystem>
#include <map>

#include "crossbench/generator.hpp"
#include "crossbench/managers.hpp"

namespace cb = crossbench;
namespace fs = std::filesystem;

namespace {

constexpr std::uint32_t kEvents = 50;
constexpr std::uint32_t kReduction = 10;

// One file per (manager, compression), written once per process.
const fs::path& store_file(cb::ManagerKind manager, int level) {
  static std::map<std::pair<cb::ManagerKind, int>, fs::path> files;
  auto& path = files[{manager, level}];
  if (path.empty()) {
    const auto dir = fs::temp_directory_path() / "crossbench-bench";
    fs::create_directories(dir);
    path = dir / (std::string(cb::to_string(manager)) + "_l" + std::to_string(level) + ".dat");
    cb::StoreOptions o;
    o.manager = manager;
    o.compression_level = level;
    auto writer = cb::make_writer<cb::Event>(path, o);
    for (std::uint32_t i = 0; i < kEvents; ++i) writer->write(cb::generate_event(1, i, kReduction));
    writer->finalize();
  }
  return path;
}

void BM_ReadAll(benchmark::State& state) {
  const auto manager = cb::kAllManagerKinds[static_cast<std::size_t>(state.range(0))];
  const int level = static_cast<int>(state.range(1));
  const auto& path = store_file(manager, level);
  cb::StoreOptions o;
  o.manager = manager;
  o.compression_level = level;
  cb::Event folder(cb::ContainerKind::SlotArray);
  for (auto _ : state) {
    auto reader = cb::make_reader<cb::Event>(o);
    reader->connect(folder, path);
    for (std::uint64_t i = 0; i < kEvents; ++i) reader->read(i);
    benchmark::DoNotOptimize(folder.element_count());
  }
  state.SetLabel(std::string(cb::to_string(manager)));
  state.SetItemsProcessed(state.iterations() * kEvents);
}
BENCHMARK(BM_ReadAll)->ArgsProduct({{0, 1, 2}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_WriteAll(benchmark::State& state) {
  const auto manager = cb::kAllManagerKinds[static_cast<std::size_t>(state.range(0))];
  cb::StoreOptions o;
  o.manager = manager;
  o.compression_level = static_cast<int>(state.range(1));
  std::vector<cb::Event> events;
  for (std::uint32_t i = 0; i < kEvents; ++i) events.push_back(cb::generate_event(1, i, kReduction));
  const auto path = fs::temp_directory_path() / "crossbench-bench" / "write.dat";
  fs::create_directories(path.parent_path());
  for (auto _ : state) {
    auto writer = cb::make_writer<cb::Event>(path, o);
    for (const auto& e : events) writer->write(e);
    benchmark::DoNotOptimize(writer->finalize());
  }
  state.SetLabel(std::string(cb::to_string(manager)));
  state.SetItemsProcessed(state.iterations() * kEvents);
}
BENCHMARK(BM_WriteAll)->ArgsProduct({{0, 1, 2}, {0, 1}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
