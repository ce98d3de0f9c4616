#include <gtest/gtest.h>

#include <cstdlib>

#include "crossbench/managers.hpp"
#include "test_support.hpp"

// Byte-exact store files written from hand-built events. Set
// CROSSBENCH_UPDATE_GOLDEN=1 to regenerate them after a deliberate format
// change.

namespace crossbench {
namespace {

using testing::TempDir;

const std::filesystem::path kData = CROSSBENCH_TEST_DATA_DIR;

struct GoldenCase {
  std::string file;
  ManagerKind manager;
  int level;
  int split;
};

void PrintTo(const GoldenCase& c, std::ostream* os) { *os << c.file; }

const GoldenCase kCases[] = {
    {"golden_keys_l0.rtbk", ManagerKind::Keys, 0, 99},   {"golden_keys_l1.rtbk", ManagerKind::Keys, 1, 99},
    {"golden_matrix_l0.rtbm", ManagerKind::Matrix, 0, 0}, {"golden_tree_s0_l0.rtbt", ManagerKind::Tree, 0, 0},
    {"golden_tree_s99_l0.rtbt", ManagerKind::Tree, 0, 99}, {"golden_tree_s99_l1.rtbt", ManagerKind::Tree, 1, 99},
};

StoreOptions options_for(const GoldenCase& c) {
  StoreOptions o;
  o.manager = c.manager;
  o.compression_level = c.level;
  o.split_level = c.split;
  o.basket_size = 256;
  return o;
}

std::vector<Event> golden_events() {
  std::vector<Event> out;
  for (std::uint64_t i = 0; i < 3; ++i) out.push_back(testing::hand_event(i));
  return out;
}

class Golden : public ::testing::TestWithParam<GoldenCase> {};

TEST_P(Golden, FileMatches) {
  const GoldenCase& c = GetParam();
  TempDir dir("golden");
  const auto written = dir / c.file;
  {
    auto w = make_writer<Event>(written, options_for(c));
    for (const auto& e : golden_events()) w->write(e);
    w->finalize();
  }
  const auto golden = kData / c.file;
  if (std::getenv("CROSSBENCH_UPDATE_GOLDEN") != nullptr) {
    std::filesystem::copy_file(written, golden, std::filesystem::copy_options::overwrite_existing);
  }
  ASSERT_TRUE(std::filesystem::exists(golden)) << golden;

  // Level 0 output is fully determined by the format; deflate output may
  // legitimately change with the zlib version, so only its decoding is pinned.
  if (c.level == 0) {
    EXPECT_EQ(testing::read_file(written), testing::read_file(golden));
  }

  auto r = make_reader<Event>(options_for(c));
  Event folder(ContainerKind::SlotArray);
  r->connect(folder, golden);
  const auto events = golden_events();
  ASSERT_EQ(r->entry_count(), events.size());
  for (std::uint64_t i = 0; i < events.size(); ++i) {
    r->read(i);
    EXPECT_TRUE(folder == events[i]) << "entry " << i;
  }
}

INSTANTIATE_TEST_SUITE_P(Stores, Golden, ::testing::ValuesIn(kCases), [](const auto& info) {
  std::string name = info.param.file;
  for (char& ch : name) {
    if (ch == '.') ch = '_';
  }
  return name;
});

}  // namespace
}  // namespace crossbench
