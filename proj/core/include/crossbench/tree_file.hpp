#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "crossbench/bytes.hpp"
#include "crossbench/codec.hpp"
#include "crossbench/event_model.hpp"
#include "crossbench/file_io.hpp"
#include "crossbench/schema.hpp"

namespace crossbench {

inline constexpr std::uint16_t kTreeFormatVersion = 1;
inline constexpr std::size_t kDefaultBasketSize = 8000;

/// How a branch's entry bytes are laid out.
enum class BranchEncoding : std::uint8_t {
  RowNative = 0,  // whole objects, native widths
  RowWide = 1,    // whole objects, every attribute as f64 (matrix rows)
  Column = 2,     // one attribute, native width
};

inline constexpr std::uint16_t kWholeObject = 0xFFFF;

struct BranchDescriptor {
  std::string name;
  std::uint16_t class_index = 0;
  std::uint16_t attribute_index = kWholeObject;
  BranchEncoding encoding = BranchEncoding::RowNative;
};

/// Tree files hold either object/attribute branches ("tree") or one f64
/// matrix per class per entry ("matrix").
enum class TreeLayout : std::uint8_t { Tree = 0, Matrix = 1 };

struct TreeHeader {
  TreeLayout layout = TreeLayout::Tree;
  std::uint8_t split_level = 99;
  bool widen = false;
  std::uint8_t compression_level = 1;
  std::uint32_t basket_size = kDefaultBasketSize;
  std::uint64_t entry_count = 0;
  std::vector<ClassSchema> classes;
};

struct BasketInfo {
  std::uint64_t first_entry = 0;
  std::uint32_t entry_count = 0;
  std::uint64_t offset = 0;
  std::uint32_t compressed_length = 0;
  std::uint32_t uncompressed_length = 0;
};

/// Size accounting returned by every writer on finalize.
struct FileStats {
  std::uint64_t total_bytes = 0;
  std::uint64_t entries = 0;
  std::uint64_t payload_bytes = 0;  // uncompressed entry bytes
  std::uint64_t basket_count = 0;
  std::vector<std::uint64_t> baskets_per_branch;

  double bytes_per_event() const {
    return entries == 0 ? 0.0 : static_cast<double>(total_bytes) / static_cast<double>(entries);
  }
};

/// Branch list implied by a layout, a split level and the class schemas:
/// one whole-object branch per class for split 0 and for matrices, one
/// column branch per attribute otherwise.
std::vector<BranchDescriptor> make_branches(TreeLayout layout, int split_level,
                                            const std::vector<ClassSchema>& classes);

/// Untyped tree writer: buffers each branch into baskets, compresses and
/// appends them as they fill, and writes the entry index on finalize.
class TreeFileWriter {
 public:
  TreeFileWriter(const std::filesystem::path& path, TreeHeader header);
  ~TreeFileWriter();

  TreeFileWriter(const TreeFileWriter&) = delete;
  TreeFileWriter& operator=(const TreeFileWriter&) = delete;

  const std::vector<BranchDescriptor>& branches() const { return branches_; }
  const TreeHeader& header() const { return header_; }

  /// Adds one entry's bytes for a branch. Every branch must receive exactly
  /// one call per entry before end_entry.
  void append(std::size_t branch, ByteSpan entry_bytes, std::uint32_t element_count);
  void end_entry(std::uint64_t record_id);

  /// Flushes open baskets, writes the index and trailer, patches the entry
  /// count into the header. Idempotent.
  FileStats finalize();

 private:
  struct BranchState {
    Bytes pending;
    std::uint64_t pending_first = 0;
    std::uint32_t pending_entries = 0;
    std::vector<BasketInfo> baskets;
    std::vector<std::uint32_t> counts;
  };

  void flush(BranchState& b);

  OutputFile file_;
  TreeHeader header_;
  std::vector<BranchDescriptor> branches_;
  std::vector<BranchState> state_;
  std::vector<std::uint64_t> record_ids_;
  std::uint64_t entry_count_offset_ = 0;
  std::uint64_t payload_bytes_ = 0;
  std::optional<FileStats> stats_;
};

/// Untyped tree reader with one cached basket per branch.
class TreeFileReader {
 public:
  /// Loads header and index; throws FormatError on a bad file.
  explicit TreeFileReader(const std::filesystem::path& path);

  const TreeHeader& header() const { return header_; }
  const std::vector<BranchDescriptor>& branches() const { return branches_; }
  std::uint64_t entry_count() const { return header_.entry_count; }
  const std::filesystem::path& path() const { return file_.path(); }

  std::uint64_t record_id(std::uint64_t entry) const { return record_ids_.at(entry); }
  std::uint32_t element_count(std::size_t branch, std::uint64_t entry) const;
  const std::vector<BasketInfo>& baskets(std::size_t branch) const { return index_[branch].baskets; }

  /// View of one entry's (uncompressed) bytes for a branch, valid until the
  /// next call for that branch. Loads the basket only on a cache miss.
  ByteSpan entry_bytes(std::size_t branch, std::uint64_t entry);

  void drop_caches();

  IoStats& stats() { return stats_; }
  const IoStats& stats() const { return stats_; }

 private:
  struct BranchIndex {
    std::vector<BasketInfo> baskets;
    std::vector<std::uint32_t> counts;
    std::vector<std::uint32_t> entry_basket;
    std::vector<std::uint64_t> entry_offset;  // within its basket
    std::size_t unit = 0;                     // bytes per element
  };
  struct Cache {
    std::int64_t basket = -1;
    Bytes bytes;
  };

  void check_entry(std::uint64_t entry) const;

  InputFile file_;
  TreeHeader header_;
  std::vector<BranchDescriptor> branches_;
  std::vector<BranchIndex> index_;
  std::vector<std::uint64_t> record_ids_;
  std::vector<Cache> cache_;
  IoStats stats_;
};

// ---------------------------------------------------------------------------
// Typed front ends.

struct TreeOptions {
  TreeLayout layout = TreeLayout::Tree;
  int split_level = 99;
  int compression_level = 1;
  std::uint32_t basket_size = kDefaultBasketSize;
};

template <Record R>
class TreeWriter {
 public:
  TreeWriter(const std::filesystem::path& path, const TreeOptions& options)
      : file_(path, make_header(options)) {}

  void append(const R& record) {
    std::size_t branch = 0;
    record.for_each_collection([&](const auto& seq) {
      using T = typename std::remove_cvref_t<decltype(seq)>::value_type;
      const auto count = static_cast<std::uint32_t>(seq.size());
      const auto& desc = file_.branches()[branch];
      if (desc.encoding == BranchEncoding::Column) {
        for (std::size_t a = 0; a < attribute_count<T>(); ++a, ++branch) {
          scratch_.clear();
          append_column(seq, a, scratch_);
          file_.append(branch, scratch_, count);
        }
      } else {
        scratch_.clear();
        append_rows(seq, desc.encoding == BranchEncoding::RowWide, scratch_);
        file_.append(branch++, scratch_, count);
      }
    });
    file_.end_entry(record.id);
  }

  FileStats finalize() { return file_.finalize(); }
  const std::vector<BranchDescriptor>& branches() const { return file_.branches(); }

 private:
  static TreeHeader make_header(const TreeOptions& o) {
    TreeHeader h;
    h.layout = o.layout;
    h.split_level = static_cast<std::uint8_t>(o.layout == TreeLayout::Matrix ? 0 : o.split_level);
    h.widen = o.layout == TreeLayout::Matrix;
    h.compression_level = static_cast<std::uint8_t>(o.compression_level);
    h.basket_size = o.basket_size;
    h.classes = record_schemas<R>();
    return h;
  }

  TreeFileWriter file_;
  Bytes scratch_;
};

template <Record R>
class TreeReader {
 public:
  explicit TreeReader(const std::filesystem::path& path) : file_(path) {
    if (file_.header().classes != record_schemas<R>()) {
      throw FormatError(path.string() + ": class schemas do not match " + std::string(R::kRecordName));
    }
  }

  std::uint64_t entry_count() const { return file_.entry_count(); }

  /// Throws std::out_of_range for entry >= entry_count().
  void read(std::uint64_t entry, R& out) {
    if (entry >= file_.entry_count()) {
      throw std::out_of_range("entry " + std::to_string(entry) + " out of range (" +
                              std::to_string(file_.entry_count()) + " entries)");
    }
    std::size_t branch = 0;
    out.for_each_collection([&](auto& seq) {
      using T = typename std::remove_cvref_t<decltype(seq)>::value_type;
      const auto& desc = file_.branches()[branch];
      if (desc.encoding == BranchEncoding::Column) {
        const std::uint32_t count = file_.element_count(branch, entry);
        spans_.clear();
        for (std::size_t a = 0; a < attribute_count<T>(); ++a) {
          spans_.push_back(file_.entry_bytes(branch + a, entry));
        }
        decode_columns<T>(std::span<const ByteSpan>(spans_), count, seq);
        branch += attribute_count<T>();
      } else {
        decode_rows<T>(file_.entry_bytes(branch, entry), desc.encoding == BranchEncoding::RowWide, seq);
        ++branch;
      }
    });
    out.id = file_.record_id(entry);
  }

  TreeFileReader& file() { return file_; }
  const TreeFileReader& file() const { return file_; }

 private:
  TreeFileReader file_;
  std::vector<ByteSpan> spans_;
};

}  // namespace crossbench
