#include "crossbench/selection.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace crossbench {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) { return splitmix64(splitmix64(a) ^ (b + 0x632be59bd9b4e019ULL)); }

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below: bound must be positive");
  // Reject the low (2^64 mod bound) values so every residue is equally likely.
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = rng();
    if (r >= threshold) return r % bound;
  }
}

FileChain::FileChain(std::vector<Member> members) : members_(std::move(members)) {
  starts_.reserve(members_.size());
  for (const auto& m : members_) {
    starts_.push_back(total_);
    total_ += m.entries;
  }
}

FileChain FileChain::uniform(std::size_t files, std::uint64_t entries_each, std::vector<std::filesystem::path> paths) {
  if (!paths.empty() && paths.size() != files) throw std::invalid_argument("path count does not match file count");
  std::vector<Member> members(files);
  for (std::size_t i = 0; i < files; ++i) {
    members[i].entries = entries_each;
    if (!paths.empty()) members[i].path = std::move(paths[i]);
  }
  return FileChain(std::move(members));
}

FileChain::Location FileChain::locate(std::uint64_t g) const {
  if (g >= total_) {
    throw std::out_of_range("global entry " + std::to_string(g) + " out of range (chain holds " +
                            std::to_string(total_) + ")");
  }
  // Last member whose start is <= g; empty members share a start with their
  // successor and are skipped by upper_bound.
  const auto it = std::upper_bound(starts_.begin(), starts_.end(), g);
  const auto file = static_cast<std::size_t>(std::distance(starts_.begin(), it) - 1);
  return {file, g - starts_[file]};
}

std::uint64_t count_file_switches(const FileChain& chain, const std::vector<std::uint64_t>& entries) {
  std::uint64_t switches = 0;
  for (std::size_t i = 1; i < entries.size(); ++i) {
    if (chain.locate(entries[i]).file != chain.locate(entries[i - 1]).file) ++switches;
  }
  return switches;
}

Selection next_indices(const FileChain& chain, const SelectorParams& params, std::uint64_t cursor,
                       std::uint64_t count) {
  if (chain.empty()) throw std::invalid_argument("cannot select from an empty chain");
  if (params.burst == 0) throw std::invalid_argument("burst must be positive");
  if (count == 0) throw std::invalid_argument("count must be positive");

  const std::uint64_t total = chain.total();
  std::mt19937_64 rng(mix_seed(params.seed, cursor));
  Selection out;
  out.entries.reserve(count);
  std::uint64_t pos = cursor % total;
  while (out.entries.size() < count) {
    for (std::uint32_t k = 0; k < params.burst && out.entries.size() < count; ++k) {
      out.entries.push_back(pos);
      pos = (pos + 1) % total;
    }
    // pos is already one past the burst; add the jump U in [0, jump].
    pos = (pos + uniform_below(rng, static_cast<std::uint64_t>(params.jump) + 1)) % total;
  }
  out.next_cursor = pos;
  out.file_switches = count_file_switches(chain, out.entries);
  return out;
}

std::vector<std::uint32_t> assign_ranks(std::uint64_t seed, std::uint32_t count) {
  std::vector<std::uint32_t> ranks(count);
  std::iota(ranks.begin(), ranks.end(), 0u);
  std::mt19937_64 rng(splitmix64(seed));
  for (std::uint32_t i = count; i > 1; --i) {
    const auto j = static_cast<std::uint32_t>(uniform_below(rng, i));
    std::swap(ranks[i - 1], ranks[j]);
  }
  return ranks;
}

}  // namespace crossbench
