#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "crossbench/selection.hpp"

namespace crossbench {
namespace {

const std::filesystem::path kGolden = std::filesystem::path(CROSSBENCH_TEST_DATA_DIR) / "selection_seed1_x3_y10.txt";

std::uint64_t gap(std::uint64_t a, std::uint64_t b, std::uint64_t total) { return (b + total - a) % total; }

TEST(Selection, ZeroJumpIsSequential) {
  const FileChain chain = FileChain::uniform(10, 100);
  const Selection s = next_indices(chain, {3, 0, 1}, 990, 25);
  ASSERT_EQ(s.entries.size(), 25u);
  for (std::size_t i = 0; i < s.entries.size(); ++i) EXPECT_EQ(s.entries[i], (990 + i) % 1000);
  EXPECT_EQ(s.next_cursor, (990 + 25) % 1000);
}

TEST(Selection, GapsFollowBurstJumpRule) {
  const FileChain chain = FileChain::uniform(10, 100);
  for (std::uint32_t burst : {1u, 3u, 7u}) {
    for (std::uint32_t jump : {1u, 10u, 500u}) {
      const SelectorParams p{burst, jump, 17};
      const Selection s = next_indices(chain, p, 123, 600);
      std::set<std::uint64_t> seen_gaps;
      for (std::size_t i = 1; i < s.entries.size(); ++i) {
        const auto g = gap(s.entries[i - 1], s.entries[i], chain.total());
        if (i % burst != 0) {
          EXPECT_EQ(g, 1u) << "within a burst at " << i;
        } else {
          EXPECT_GE(g, 1u);
          EXPECT_LE(g, static_cast<std::uint64_t>(jump) + 1);
          seen_gaps.insert(g);
        }
      }
      if (jump == 10 && burst == 1) {
        EXPECT_EQ(seen_gaps.size(), 11u);  // every gap 1..11 occurs
      }
    }
  }
}

TEST(Selection, PureFunctionOfArguments) {
  const FileChain chain = FileChain::uniform(10, 100);
  const Selection a = next_indices(chain, {3, 10, 5}, 40, 153);
  const Selection b = next_indices(chain, {3, 10, 5}, 40, 153);
  EXPECT_EQ(a.entries, b.entries);
  EXPECT_EQ(a.next_cursor, b.next_cursor);
  EXPECT_NE(a.entries, next_indices(chain, {3, 10, 6}, 40, 153).entries);
  EXPECT_EQ(a.entries.front(), 40u);
}

TEST(Selection, FileSwitchesCounted) {
  const FileChain chain = FileChain::uniform(10, 100);
  const Selection s = next_indices(chain, {3, 10, 1}, 0, 153);
  std::uint64_t manual = 0;
  for (std::size_t i = 1; i < s.entries.size(); ++i) {
    if (s.entries[i] / 100 != s.entries[i - 1] / 100) ++manual;
  }
  EXPECT_EQ(s.file_switches, manual);
  EXPECT_EQ(count_file_switches(chain, s.entries), manual);
}

TEST(Selection, GoldenSequence) {
  const FileChain chain = FileChain::uniform(10, 100);
  const Selection s = next_indices(chain, {3, 10, 1}, 0, 1000);
  if (std::getenv("CROSSBENCH_UPDATE_GOLDEN") != nullptr) {
    std::ofstream out(kGolden);
    for (auto e : s.entries) out << e << "\n";
  }
  std::ifstream in(kGolden);
  ASSERT_TRUE(in) << "missing " << kGolden;
  std::vector<std::uint64_t> golden;
  for (std::uint64_t v; in >> v;) golden.push_back(v);
  ASSERT_EQ(golden.size(), 1000u);
  EXPECT_EQ(s.entries, golden);
}

TEST(Selection, InvalidArguments) {
  const FileChain chain = FileChain::uniform(2, 5);
  EXPECT_THROW(next_indices(FileChain{}, {}, 0, 1), std::invalid_argument);
  EXPECT_THROW(next_indices(chain, {0, 1, 1}, 0, 1), std::invalid_argument);
  EXPECT_THROW(next_indices(chain, {}, 0, 0), std::invalid_argument);
}

TEST(FileChain, LocateMatchesLinearScan) {
  const FileChain chain({{"a", 7}, {"b", 0}, {"c", 1}, {"d", 30}, {"e", 0}, {"f", 4}});
  ASSERT_EQ(chain.total(), 42u);
  for (std::uint64_t g = 0; g < chain.total(); ++g) {
    std::uint64_t rest = g;
    std::size_t file = 0;
    while (rest >= chain.members()[file].entries) rest -= chain.members()[file++].entries;
    EXPECT_EQ(chain.locate(g), (FileChain::Location{file, rest})) << g;
  }
  EXPECT_THROW(chain.locate(42), std::out_of_range);
  EXPECT_THROW(FileChain::uniform(2, 3, {"x"}), std::invalid_argument);
}

TEST(Ranks, ArePermutations) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto r = assign_ranks(seed, 153);
    std::sort(r.begin(), r.end());
    for (std::uint32_t i = 0; i < 153; ++i) ASSERT_EQ(r[i], i);
  }
  EXPECT_TRUE(assign_ranks(3, 0).empty());
  EXPECT_EQ(assign_ranks(3, 1), std::vector<std::uint32_t>{0});
}

TEST(Ranks, UniformPositions) {
  // Chi-square over where element 0 lands, 5 positions, 20000 draws.
  constexpr int kCount = 5;
  constexpr int kTrials = 20000;
  std::vector<int> hist(kCount, 0);
  for (int t = 0; t < kTrials; ++t) {
    const auto r = assign_ranks(static_cast<std::uint64_t>(t), kCount);
    ++hist[std::find(r.begin(), r.end(), 0u) - r.begin()];
  }
  double chi2 = 0;
  const double expected = static_cast<double>(kTrials) / kCount;
  for (int h : hist) chi2 += (h - expected) * (h - expected) / expected;
  EXPECT_LT(chi2, 18.47);  // p = 0.001 for 4 degrees of freedom
}

TEST(Random, UniformBelow) {
  std::mt19937_64 rng(1);
  EXPECT_EQ(uniform_below(rng, 1), 0u);
  EXPECT_THROW(uniform_below(rng, 0), std::invalid_argument);
  std::vector<int> hist(3, 0);
  for (int i = 0; i < 30000; ++i) ++hist[uniform_below(rng, 3)];
  for (int h : hist) EXPECT_NEAR(h, 10000, 400);
  EXPECT_NE(mix_seed(1, 2), mix_seed(2, 1));
  EXPECT_EQ(splitmix64(0), 0xe220a8397b1dcdafULL);
}

}  // namespace
}  // namespace crossbench
