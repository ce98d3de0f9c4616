#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "crossbench/errors.hpp"

namespace crossbench {

using Bytes = std::vector<std::byte>;
using ByteSpan = std::span<const std::byte>;

template <typename T>
concept Scalar = std::is_arithmetic_v<T>;

namespace detail {

template <std::size_t N>
struct UnsignedOfSize;
template <>
struct UnsignedOfSize<1> {
  using type = std::uint8_t;
};
template <>
struct UnsignedOfSize<2> {
  using type = std::uint16_t;
};
template <>
struct UnsignedOfSize<4> {
  using type = std::uint32_t;
};
template <>
struct UnsignedOfSize<8> {
  using type = std::uint64_t;
};

}  // namespace detail

// Little-endian store of an arithmetic value into exactly sizeof(T) bytes.
template <Scalar T>
inline void store_le(std::byte* dst, T value) {
  using U = typename detail::UnsignedOfSize<sizeof(T)>::type;
  auto bits = std::bit_cast<U>(value);
  if constexpr (std::endian::native == std::endian::little) {
    std::memcpy(dst, &bits, sizeof(T));
  } else {
    for (std::size_t i = 0; i < sizeof(T); ++i) {
      dst[i] = static_cast<std::byte>(bits & 0xFFu);
      bits = static_cast<U>(bits >> 8);
    }
  }
}

template <Scalar T>
inline T load_le(const std::byte* src) {
  using U = typename detail::UnsignedOfSize<sizeof(T)>::type;
  U bits{};
  if constexpr (std::endian::native == std::endian::little) {
    std::memcpy(&bits, src, sizeof(T));
  } else {
    for (std::size_t i = sizeof(T); i-- > 0;) {
      bits = static_cast<U>((bits << 8) | static_cast<U>(src[i]));
    }
  }
  return std::bit_cast<T>(bits);
}

template <Scalar T>
inline void append_le(Bytes& out, T value) {
  const auto pos = out.size();
  out.resize(pos + sizeof(T));
  store_le(out.data() + pos, value);
}

/// Append-only little-endian writer used by the file formats.
class ByteWriter {
 public:
  explicit ByteWriter(Bytes& out) : out_(out) {}

  template <Scalar T>
  void put(T value) {
    append_le(out_, value);
  }

  void put_bytes(ByteSpan bytes) { out_.insert(out_.end(), bytes.begin(), bytes.end()); }

  // u16 length prefix followed by the raw characters.
  void put_string(std::string_view s);

  std::size_t size() const { return out_.size(); }

 private:
  Bytes& out_;
};

/// Bounds-checked little-endian reader; any overrun throws FormatError.
class ByteReader {
 public:
  explicit ByteReader(ByteSpan bytes) : bytes_(bytes) {}

  template <Scalar T>
  T get() {
    require(sizeof(T));
    T v = load_le<T>(bytes_.data() + pos_);
    pos_ += sizeof(T);
    return v;
  }

  ByteSpan get_bytes(std::size_t n) {
    require(n);
    auto s = bytes_.subspan(pos_, n);
    pos_ += n;
    return s;
  }

  std::string get_string();

  void expect_magic(std::string_view magic);

  std::size_t position() const { return pos_; }
  std::size_t remaining() const { return bytes_.size() - pos_; }

 private:
  void require(std::size_t n) const {
    if (n > bytes_.size() - pos_) {
      throw FormatError("unexpected end of data: need " + std::to_string(n) + " bytes, have " +
                        std::to_string(bytes_.size() - pos_));
    }
  }

  ByteSpan bytes_;
  std::size_t pos_ = 0;
};

inline ByteSpan as_bytes(std::string_view s) {
  return {reinterpret_cast<const std::byte*>(s.data()), s.size()};
}

}  // namespace crossbench
