#include "crossbench/file_io.hpp"

#include <fcntl.h>
#include <sys/stat.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <utility>

namespace crossbench {

namespace {

[[noreturn]] void fail(const std::string& what, const std::filesystem::path& path) {
  throw IoError(what + " '" + path.string() + "': " + std::strerror(errno));
}

constexpr std::size_t kWriteBuffer = 1 << 20;

}  // namespace

InputFile::InputFile(const std::filesystem::path& path) : path_(path) {
  fd_ = ::open(path.c_str(), O_RDONLY | O_CLOEXEC);
  if (fd_ < 0) fail("cannot open", path);
  struct stat st {};
  if (::fstat(fd_, &st) != 0) {
    close();
    fail("cannot stat", path);
  }
  size_ = static_cast<std::uint64_t>(st.st_size);
}

InputFile::~InputFile() { close(); }

InputFile::InputFile(InputFile&& other) noexcept
    : fd_(std::exchange(other.fd_, -1)), size_(other.size_), path_(std::move(other.path_)) {}

InputFile& InputFile::operator=(InputFile&& other) noexcept {
  if (this != &other) {
    close();
    fd_ = std::exchange(other.fd_, -1);
    size_ = other.size_;
    path_ = std::move(other.path_);
  }
  return *this;
}

void InputFile::close() noexcept {
  if (fd_ >= 0) ::close(fd_);
  fd_ = -1;
}

void InputFile::read_at(std::uint64_t offset, std::byte* dst, std::size_t n, IoStats& stats) const {
  if (offset > size_ || n > size_ - offset) {
    throw FormatError(path_.string() + ": read of " + std::to_string(n) + " bytes at offset " +
                      std::to_string(offset) + " runs past end of file (" + std::to_string(size_) + " bytes)");
  }
  ++stats.reads;
  std::size_t done = 0;
  while (done < n) {
    const ssize_t got = ::pread(fd_, dst + done, n - done, static_cast<off_t>(offset + done));
    if (got < 0) {
      if (errno == EINTR) continue;
      fail("read failed on", path_);
    }
    if (got == 0) throw FormatError(path_.string() + ": unexpected end of file");
    done += static_cast<std::size_t>(got);
  }
  stats.bytes_read += n;
}

Bytes InputFile::read_at(std::uint64_t offset, std::size_t n, IoStats& stats) const {
  Bytes out(n);
  read_at(offset, out.data(), n, stats);
  return out;
}

OutputFile::OutputFile(const std::filesystem::path& path) : path_(path) {
  fd_ = ::open(path.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0644);
  if (fd_ < 0) fail("cannot create", path);
  pending_.reserve(kWriteBuffer);
}

OutputFile::~OutputFile() {
  try {
    close();
  } catch (...) {
  }
}

void OutputFile::append(ByteSpan bytes) {
  if (fd_ < 0) throw IoError("write to closed file '" + path_.string() + "'");
  pending_.insert(pending_.end(), bytes.begin(), bytes.end());
  position_ += bytes.size();
  if (pending_.size() >= kWriteBuffer) flush();
}

void OutputFile::flush() {
  std::size_t done = 0;
  while (done < pending_.size()) {
    const ssize_t put = ::write(fd_, pending_.data() + done, pending_.size() - done);
    if (put < 0) {
      if (errno == EINTR) continue;
      fail("write failed on", path_);
    }
    done += static_cast<std::size_t>(put);
  }
  pending_.clear();
}

void OutputFile::patch(std::uint64_t offset, ByteSpan bytes) {
  if (fd_ < 0) throw IoError("write to closed file '" + path_.string() + "'");
  flush();
  std::size_t done = 0;
  while (done < bytes.size()) {
    const ssize_t put = ::pwrite(fd_, bytes.data() + done, bytes.size() - done, static_cast<off_t>(offset + done));
    if (put < 0) {
      if (errno == EINTR) continue;
      fail("write failed on", path_);
    }
    done += static_cast<std::size_t>(put);
  }
}

void OutputFile::close() {
  if (fd_ < 0) return;
  flush();
  const int fd = std::exchange(fd_, -1);
  if (::close(fd) != 0) fail("close failed on", path_);
}

}  // namespace crossbench
