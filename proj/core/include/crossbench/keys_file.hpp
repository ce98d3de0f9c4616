#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "crossbench/bytes.hpp"
#include "crossbench/codec.hpp"
#include "crossbench/event_model.hpp"
#include "crossbench/file_io.hpp"
#include "crossbench/tree_file.hpp"

namespace crossbench {

inline constexpr std::uint16_t kKeysFormatVersion = 1;

struct KeyEntry {
  std::string name;
  std::uint64_t offset = 0;  // start of the record (its name length field)
  std::uint64_t payload_length = 0;
};

/// Append-only store of named, individually compressed blobs with a
/// directory written at the end.
class KeysFileWriter {
 public:
  explicit KeysFileWriter(const std::filesystem::path& path);

  KeysFileWriter(const KeysFileWriter&) = delete;
  KeysFileWriter& operator=(const KeysFileWriter&) = delete;

  /// Throws std::invalid_argument for a duplicate or over-long name.
  void append(std::string_view name, const ByteBlock& payload);
  bool contains(std::string_view name) const;

  /// Writes directory and trailer. Idempotent.
  FileStats finalize();

 private:
  OutputFile file_;
  std::vector<KeyEntry> directory_;
  std::unordered_map<std::string, std::size_t> names_;
  std::uint64_t payload_bytes_ = 0;
  std::optional<FileStats> stats_;
};

class KeysFileReader {
 public:
  /// Loads the trailer and directory; throws FormatError on a bad file.
  explicit KeysFileReader(const std::filesystem::path& path);

  const std::vector<KeyEntry>& directory() const { return directory_; }
  bool contains(std::string_view name) const { return lookup_.contains(std::string(name)); }

  /// Fetches one record's payload with a single positioned read. Throws
  /// std::out_of_range for an unknown name.
  ByteBlock read(std::string_view name);

  const std::filesystem::path& path() const { return file_.path(); }
  IoStats& stats() { return stats_; }
  const IoStats& stats() const { return stats_; }

 private:
  InputFile file_;
  std::vector<KeyEntry> directory_;
  std::unordered_map<std::string, std::size_t> lookup_;
  IoStats stats_;
};

// ---------------------------------------------------------------------------
// Record payloads: record id (u64), then per collection an element count
// (u32) followed by the native-width row encoding.

template <Record R>
Bytes encode_record_payload(const R& record) {
  Bytes out;
  append_le(out, record.id);
  record.for_each_collection([&](const auto& seq) {
    append_le(out, static_cast<std::uint32_t>(seq.size()));
    append_rows(seq, false, out);
  });
  return out;
}

template <Record R>
void decode_record_payload(ByteSpan payload, R& out) {
  ByteReader in(payload);
  out.id = in.get<std::uint64_t>();
  out.for_each_collection([&](auto& seq) {
    using T = typename std::remove_cvref_t<decltype(seq)>::value_type;
    const auto count = in.get<std::uint32_t>();
    decode_rows<T>(in.get_bytes(static_cast<std::size_t>(count) * row_stride<T>(false)), false, seq);
  });
  if (in.remaining() != 0) {
    throw FormatError("trailing bytes after " + std::string(R::kRecordName) + " payload");
  }
}

inline std::string key_name(std::string_view folder_name, std::uint64_t rank) {
  return std::string(folder_name) + std::to_string(rank);
}

/// Appends `record` as "<folder_name><rank>", compressed as one unit.
template <Record R>
void keys_write_event(KeysFileWriter& store, std::string_view folder_name, std::uint64_t rank,
                      const R& record, int level) {
  store.append(key_name(folder_name, rank), compress(encode_record_payload(record), level));
}

template <Record R>
void keys_read_event(KeysFileReader& store, std::string_view name, R& out) {
  const ByteBlock stored = store.read(name);
  if (stored.level == 0) {
    decode_record_payload(ByteSpan(stored.bytes), out);
  } else {
    const ByteBlock plain = decompress(stored);
    decode_record_payload(ByteSpan(plain.bytes), out);
  }
}

}  // namespace crossbench
