#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <utility>
#include <vector>

namespace crossbench {

/// Ordered list of files read as one logical sequence of entries.
class FileChain {
 public:
  struct Member {
    std::filesystem::path path;
    std::uint64_t entries = 0;
  };

  FileChain() = default;
  explicit FileChain(std::vector<Member> members);

  /// Chain of `files` members with `entries_each` entries; paths are taken
  /// from `paths` when given (size must match), otherwise left empty.
  static FileChain uniform(std::size_t files, std::uint64_t entries_each,
                           std::vector<std::filesystem::path> paths = {});

  bool empty() const { return total_ == 0; }
  std::uint64_t total() const { return total_; }
  const std::vector<Member>& members() const { return members_; }

  struct Location {
    std::size_t file = 0;
    std::uint64_t entry = 0;
    friend bool operator==(const Location&, const Location&) = default;
  };

  /// Maps a global entry to (file index, local entry); throws
  /// std::out_of_range when g >= total().
  Location locate(std::uint64_t g) const;

 private:
  std::vector<Member> members_;
  std::vector<std::uint64_t> starts_;  // global index of each member's first entry
  std::uint64_t total_ = 0;
};

struct SelectorParams {
  std::uint32_t burst = 3;
  std::uint32_t jump = 10;
  std::uint64_t seed = 1;
};

struct Selection {
  std::vector<std::uint64_t> entries;
  std::uint64_t next_cursor = 0;
  std::uint64_t file_switches = 0;
};

/// Burst/jump pileup selection: groups of `burst` consecutive entries
/// starting at `cursor`; after each group the position advances by 1 + U,
/// U uniform on [0, jump]. Positions wrap around the chain. The random
/// stream is seeded from (seed, cursor), so the result is a pure function
/// of the arguments. Throws std::invalid_argument for an empty chain, a
/// zero burst or a zero count.
Selection next_indices(const FileChain& chain, const SelectorParams& params, std::uint64_t cursor,
                       std::uint64_t count);

/// Uniformly random permutation of [0, count) (Fisher-Yates), deterministic
/// per seed.
std::vector<std::uint32_t> assign_ranks(std::uint64_t seed, std::uint32_t count);

/// Number of adjacent pairs in `entries` that live in different files.
std::uint64_t count_file_switches(const FileChain& chain, const std::vector<std::uint64_t>& entries);

// Random number plumbing with a fixed, documented algorithm: a SplitMix64
// mixer for seeding, std::mt19937_64 for the stream, and rejection sampling
// for bounded integers (std::uniform_int_distribution is not portable).

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);
/// Uniform integer in [0, bound); bound > 0.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

}  // namespace crossbench
