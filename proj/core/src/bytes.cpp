#include "crossbench/bytes.hpp"

#include <limits>
#include <stdexcept>

namespace crossbench {

void ByteWriter::put_string(std::string_view s) {
  if (s.size() > std::numeric_limits<std::uint16_t>::max()) {
    throw std::invalid_argument("string longer than 65535 bytes");
  }
  put(static_cast<std::uint16_t>(s.size()));
  put_bytes(as_bytes(s));
}

std::string ByteReader::get_string() {
  const auto n = get<std::uint16_t>();
  const auto raw = get_bytes(n);
  return {reinterpret_cast<const char*>(raw.data()), raw.size()};
}

void ByteReader::expect_magic(std::string_view magic) {
  const auto raw = get_bytes(magic.size());
  if (std::string_view(reinterpret_cast<const char*>(raw.data()), raw.size()) != magic) {
    throw FormatError("bad magic, expected \"" + std::string(magic) + "\"");
  }
}

}  // namespace crossbench
