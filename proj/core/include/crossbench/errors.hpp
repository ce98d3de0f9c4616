#pragma once

#include <stdexcept>
#include <string>

namespace crossbench {

/// Malformed, truncated or corrupted bytes: bad magic, short block,
/// failed decompression, out-of-range narrowing.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operating-system level I/O failure (open, read, write).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace crossbench
