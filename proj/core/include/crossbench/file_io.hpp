#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>

#include "crossbench/bytes.hpp"

namespace crossbench {

/// Counters kept by a reader so tests can observe file traffic.
struct IoStats {
  std::uint64_t reads = 0;           // pread calls
  std::uint64_t bytes_read = 0;
  std::uint64_t metadata_loads = 0;  // header + index/directory loads
  std::uint64_t file_opens = 0;

  IoStats& operator+=(const IoStats& o) {
    reads += o.reads;
    bytes_read += o.bytes_read;
    metadata_loads += o.metadata_loads;
    file_opens += o.file_opens;
    return *this;
  }
};

/// Read-only positional file handle (POSIX fd).
class InputFile {
 public:
  InputFile() = default;
  explicit InputFile(const std::filesystem::path& path);
  ~InputFile();

  InputFile(InputFile&& other) noexcept;
  InputFile& operator=(InputFile&& other) noexcept;
  InputFile(const InputFile&) = delete;
  InputFile& operator=(const InputFile&) = delete;

  bool is_open() const { return fd_ >= 0; }
  std::uint64_t size() const { return size_; }
  const std::filesystem::path& path() const { return path_; }

  /// Reads exactly n bytes at offset, throwing FormatError past EOF and
  /// IoError on a system failure. Increments stats.reads once.
  void read_at(std::uint64_t offset, std::byte* dst, std::size_t n, IoStats& stats) const;
  Bytes read_at(std::uint64_t offset, std::size_t n, IoStats& stats) const;

 private:
  void close() noexcept;

  int fd_ = -1;
  std::uint64_t size_ = 0;
  std::filesystem::path path_;
};

/// Sequential writer with positional patching, buffered in user space.
class OutputFile {
 public:
  explicit OutputFile(const std::filesystem::path& path);
  ~OutputFile();

  OutputFile(const OutputFile&) = delete;
  OutputFile& operator=(const OutputFile&) = delete;

  void append(ByteSpan bytes);
  /// Overwrites already-written bytes at offset (flushes first).
  void patch(std::uint64_t offset, ByteSpan bytes);
  void close();

  std::uint64_t position() const { return position_; }
  const std::filesystem::path& path() const { return path_; }

 private:
  void flush();

  int fd_ = -1;
  std::uint64_t position_ = 0;
  Bytes pending_;
  std::filesystem::path path_;
};

}  // namespace crossbench
