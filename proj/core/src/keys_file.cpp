#include "crossbench/keys_file.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace crossbench {

namespace {

constexpr std::string_view kMagic = "RTBK";
constexpr std::size_t kHeaderBytes = 4 + 2;
constexpr std::size_t kTrailerBytes = 8 + 4;

}  // namespace

KeysFileWriter::KeysFileWriter(const std::filesystem::path& path) : file_(path) {
  Bytes header;
  ByteWriter w(header);
  w.put_bytes(as_bytes(kMagic));
  w.put(kKeysFormatVersion);
  file_.append(header);
}

bool KeysFileWriter::contains(std::string_view name) const { return names_.contains(std::string(name)); }

void KeysFileWriter::append(std::string_view name, const ByteBlock& payload) {
  if (stats_) throw std::logic_error("keys file already finalized");
  if (name.size() > std::numeric_limits<std::uint16_t>::max()) throw std::invalid_argument("key name too long");
  if (contains(name)) throw std::invalid_argument("duplicate key name '" + std::string(name) + "'");

  Bytes record;
  record.reserve(2 + name.size() + 8 + kBlockFrameBytes + payload.bytes.size());
  ByteWriter w(record);
  w.put_string(name);
  w.put(static_cast<std::uint64_t>(kBlockFrameBytes + payload.bytes.size()));
  serialize_block(payload, record);

  directory_.push_back({std::string(name), file_.position(), kBlockFrameBytes + payload.bytes.size()});
  names_.emplace(std::string(name), directory_.size() - 1);
  payload_bytes_ += payload.uncompressed_length;
  file_.append(record);
}

FileStats KeysFileWriter::finalize() {
  if (stats_) return *stats_;
  const std::uint64_t dir_offset = file_.position();
  Bytes tail;
  ByteWriter w(tail);
  w.put(static_cast<std::uint64_t>(directory_.size()));
  for (const auto& e : directory_) {
    w.put_string(e.name);
    w.put(e.offset);
    w.put(e.payload_length);
  }
  w.put(dir_offset);
  w.put_bytes(as_bytes(kMagic));
  file_.append(tail);
  file_.close();

  FileStats s;
  s.total_bytes = file_.position();
  s.entries = directory_.size();
  s.payload_bytes = payload_bytes_;
  stats_ = s;
  return s;
}

KeysFileReader::KeysFileReader(const std::filesystem::path& path) : file_(path) {
  ++stats_.file_opens;
  ++stats_.metadata_loads;
  if (file_.size() < kHeaderBytes + kTrailerBytes) throw FormatError(path.string() + ": too short for a keys file");

  const Bytes head = file_.read_at(0, kHeaderBytes, stats_);
  ByteReader hr(head);
  hr.expect_magic(kMagic);
  const auto version = hr.get<std::uint16_t>();
  if (version != kKeysFormatVersion) throw FormatError(path.string() + ": unsupported keys format version");

  const Bytes trailer = file_.read_at(file_.size() - kTrailerBytes, kTrailerBytes, stats_);
  ByteReader tr(trailer);
  const auto dir_offset = tr.get<std::uint64_t>();
  tr.expect_magic(kMagic);
  if (dir_offset < kHeaderBytes || dir_offset > file_.size() - kTrailerBytes) {
    throw FormatError(path.string() + ": directory offset out of range");
  }

  const Bytes dir = file_.read_at(dir_offset, file_.size() - kTrailerBytes - dir_offset, stats_);
  ByteReader dr(dir);
  const auto count = dr.get<std::uint64_t>();
  directory_.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(count, dir.size())));
  for (std::uint64_t i = 0; i < count; ++i) {
    KeyEntry e;
    e.name = dr.get_string();
    e.offset = dr.get<std::uint64_t>();
    e.payload_length = dr.get<std::uint64_t>();
    const std::uint64_t record_end = e.offset + 2 + e.name.size() + 8 + e.payload_length;
    if (e.offset < kHeaderBytes || record_end > dir_offset || e.payload_length < kBlockFrameBytes) {
      throw FormatError(path.string() + ": directory entry '" + e.name + "' points outside the record area");
    }
    if (!lookup_.emplace(e.name, directory_.size()).second) {
      throw FormatError(path.string() + ": duplicate directory entry '" + e.name + "'");
    }
    directory_.push_back(std::move(e));
  }
  if (dr.remaining() != 0) throw FormatError(path.string() + ": trailing bytes in directory");
}

ByteBlock KeysFileReader::read(std::string_view name) {
  const auto it = lookup_.find(std::string(name));
  if (it == lookup_.end()) throw std::out_of_range("no record named '" + std::string(name) + "' in " + path().string());
  const KeyEntry& e = directory_[it->second];
  const std::size_t record_bytes = 2 + e.name.size() + 8 + e.payload_length;
  const Bytes record = file_.read_at(e.offset, record_bytes, stats_);
  ByteReader r(record);
  if (r.get_string() != e.name || r.get<std::uint64_t>() != e.payload_length) {
    throw FormatError(path().string() + ": record header of '" + e.name + "' does not match the directory");
  }
  return parse_block(r.get_bytes(e.payload_length));
}

}  // namespace crossbench
