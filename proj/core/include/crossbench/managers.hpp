#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "crossbench/keys_file.hpp"
#include "crossbench/tree_file.hpp"

namespace crossbench {

/// The three persistency managers.
enum class ManagerKind : std::uint8_t { Keys, Matrix, Tree };

inline constexpr std::array<ManagerKind, 3> kAllManagerKinds = {ManagerKind::Keys, ManagerKind::Matrix,
                                                                 ManagerKind::Tree};

std::string_view to_string(ManagerKind kind);
ManagerKind parse_manager_kind(std::string_view text);

struct StoreOptions {
  ManagerKind manager = ManagerKind::Tree;
  int compression_level = 1;
  int split_level = 99;
  std::uint32_t basket_size = kDefaultBasketSize;
  std::string folder_name = "minbias";  // key prefix for the keys manager
};

/// Validates ranges (compression 0-9, split >= 0, basket > 0); throws
/// std::invalid_argument.
void validate(const StoreOptions& options);

template <Record R>
class RecordWriter {
 public:
  virtual ~RecordWriter() = default;
  /// Appends the next entry (rank = number of entries already written).
  virtual void write(const R& record) = 0;
  virtual FileStats finalize() = 0;
};

/// A reader that is bound to one in-memory folder and one file at a time.
template <Record R>
class RecordReader {
 public:
  using Clock = std::chrono::steady_clock;

  virtual ~RecordReader() = default;

  /// Rebinds the reader to `folder` and, when `file` differs from the
  /// current one, closes it (dropping caches) and loads the new file's
  /// metadata. Returns the wall time the switch took.
  std::chrono::nanoseconds connect(R& folder, const std::filesystem::path& file) {
    const auto start = Clock::now();
    folder_ = &folder;
    if (!current_ || *current_ != file) {
      current_.reset();
      open(file);
      current_ = file;
      ++file_switches_;
    }
    return Clock::now() - start;
  }

  /// Reads `entry` of the connected file into the connected folder.
  void read(std::uint64_t entry) {
    if (folder_ == nullptr || !current_) throw std::logic_error("reader is not connected");
    read_into(entry, *folder_);
  }

  virtual std::uint64_t entry_count() const = 0;
  virtual const IoStats& stats() const = 0;

  /// Number of file loads since construction (the first connect counts).
  std::uint64_t file_loads() const { return file_switches_; }
  const std::optional<std::filesystem::path>& current_file() const { return current_; }

 protected:
  virtual void open(const std::filesystem::path& file) = 0;
  virtual void read_into(std::uint64_t entry, R& out) = 0;

  IoStats accumulated_;  // stats of files already closed

 private:
  R* folder_ = nullptr;
  std::optional<std::filesystem::path> current_;
  std::uint64_t file_switches_ = 0;
};

// ---------------------------------------------------------------------------

template <Record R>
class KeysWriter final : public RecordWriter<R> {
 public:
  KeysWriter(const std::filesystem::path& path, const StoreOptions& o)
      : file_(path), folder_(o.folder_name), level_(o.compression_level) {}

  void write(const R& record) override { keys_write_event(file_, folder_, rank_++, record, level_); }
  FileStats finalize() override { return file_.finalize(); }

 private:
  KeysFileWriter file_;
  std::string folder_;
  int level_;
  std::uint64_t rank_ = 0;
};

template <Record R>
class KeysReader final : public RecordReader<R> {
 public:
  explicit KeysReader(const StoreOptions& o) : folder_(o.folder_name) {}

  std::uint64_t entry_count() const override { return file_ ? file_->directory().size() : 0; }
  const IoStats& stats() const override {
    combined_ = this->accumulated_;
    if (file_) combined_ += file_->stats();
    return combined_;
  }

  /// Direct access by record name.
  void read_named(std::string_view name, R& out) {
    if (!file_) throw std::logic_error("reader is not connected");
    keys_read_event(*file_, name, out);
  }

 protected:
  void open(const std::filesystem::path& file) override {
    if (file_) this->accumulated_ += file_->stats();
    file_.reset();
    file_.emplace(file);
  }
  void read_into(std::uint64_t entry, R& out) override { keys_read_event(*file_, key_name(folder_, entry), out); }

 private:
  std::string folder_;
  std::optional<KeysFileReader> file_;
  mutable IoStats combined_;
};

template <Record R>
class TreeStoreWriter final : public RecordWriter<R> {
 public:
  TreeStoreWriter(const std::filesystem::path& path, const TreeOptions& o) : tree_(path, o) {}

  void write(const R& record) override { tree_.append(record); }
  FileStats finalize() override { return tree_.finalize(); }

 private:
  TreeWriter<R> tree_;
};

/// Serves both the tree and the matrix managers; the layout is recorded in
/// the file header.
template <Record R>
class TreeStoreReader final : public RecordReader<R> {
 public:
  explicit TreeStoreReader(TreeLayout expected) : expected_(expected) {}

  std::uint64_t entry_count() const override { return tree_ ? tree_->entry_count() : 0; }
  const IoStats& stats() const override {
    combined_ = this->accumulated_;
    if (tree_) combined_ += tree_->file().stats();
    return combined_;
  }

 protected:
  void open(const std::filesystem::path& file) override {
    if (tree_) this->accumulated_ += tree_->file().stats();
    tree_.reset();
    tree_.emplace(file);
    if (tree_->file().header().layout != expected_) {
      tree_.reset();
      throw FormatError(file.string() + ": unexpected tree layout");
    }
  }
  void read_into(std::uint64_t entry, R& out) override { tree_->read(entry, out); }

 private:
  TreeLayout expected_;
  std::optional<TreeReader<R>> tree_;
  mutable IoStats combined_;
};

inline TreeOptions tree_options(const StoreOptions& o) {
  TreeOptions t;
  t.layout = o.manager == ManagerKind::Matrix ? TreeLayout::Matrix : TreeLayout::Tree;
  t.split_level = o.manager == ManagerKind::Matrix ? 0 : o.split_level;
  t.compression_level = o.compression_level;
  t.basket_size = o.basket_size;
  return t;
}

template <Record R>
std::unique_ptr<RecordWriter<R>> make_writer(const std::filesystem::path& path, const StoreOptions& o) {
  validate(o);
  if (o.manager == ManagerKind::Keys) return std::make_unique<KeysWriter<R>>(path, o);
  return std::make_unique<TreeStoreWriter<R>>(path, tree_options(o));
}

template <Record R>
std::unique_ptr<RecordReader<R>> make_reader(const StoreOptions& o) {
  validate(o);
  if (o.manager == ManagerKind::Keys) return std::make_unique<KeysReader<R>>(o);
  return std::make_unique<TreeStoreReader<R>>(o.manager == ManagerKind::Matrix ? TreeLayout::Matrix
                                                                                 : TreeLayout::Tree);
}

}  // namespace crossbench
