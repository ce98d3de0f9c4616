#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "crossbench/bytes.hpp"
#include "crossbench/containers.hpp"
#include "crossbench/errors.hpp"
#include "crossbench/schema.hpp"

namespace crossbench {

/// A run of bytes plus what is needed to restore it. Level 0 blocks hold
/// their payload verbatim; levels 1-9 hold a zlib stream.
struct ByteBlock {
  Bytes bytes;
  std::uint64_t uncompressed_length = 0;
  std::uint8_t level = 0;

  static ByteBlock raw(Bytes data) {
    ByteBlock b;
    b.uncompressed_length = data.size();
    b.bytes = std::move(data);
    return b;
  }
};

/// Size of the framing written by serialize_block: level (u8) then the
/// uncompressed length (u64).
inline constexpr std::size_t kBlockFrameBytes = 9;

ByteBlock compress(ByteSpan data, int level);
inline ByteBlock compress(const ByteBlock& block, int level) { return compress(block.bytes, level); }
/// Restores the original bytes; throws FormatError on a corrupt stream or a
/// length mismatch.
ByteBlock decompress(const ByteBlock& block);
Bytes decompress_bytes(ByteSpan stored, std::uint64_t uncompressed_length, int level);

void serialize_block(const ByteBlock& block, Bytes& out);
ByteBlock parse_block(ByteSpan framed);

// ---------------------------------------------------------------------------
// Row-wise (element-major) encoding.

template <Persistent T>
constexpr std::size_t row_stride(bool widen) {
  return widen ? 8 * attribute_count<T>() : raw_size_of<T>();
}

namespace detail {

template <typename M>
M narrow_exact(double d) {
  if constexpr (std::is_floating_point_v<M>) {
    const auto v = static_cast<M>(d);
    if (static_cast<double>(v) != d && !std::isnan(d)) {
      throw FormatError("widened value " + std::to_string(d) + " is not representable");
    }
    return v;
  } else {
    if (!(d >= static_cast<double>(std::numeric_limits<M>::min()) &&
          d <= static_cast<double>(std::numeric_limits<M>::max())) ||
        d != std::trunc(d)) {
      throw FormatError("widened value " + std::to_string(d) + " does not narrow to an integer field");
    }
    return static_cast<M>(d);
  }
}

}  // namespace detail

/// Writes one element at dst (row_stride<T>(widen) bytes).
template <Persistent T>
inline void encode_element(const T& e, bool widen, std::byte* dst) {
  for_each_field<T>([&](const auto& f, std::size_t) {
    using M = typename std::remove_cvref_t<decltype(f)>::member_type;
    if (widen) {
      store_le(dst, static_cast<double>(e.*(f.ptr)));
      dst += 8;
    } else {
      store_le(dst, e.*(f.ptr));
      dst += sizeof(M);
    }
  });
}

template <Persistent T>
inline void decode_element(const std::byte* src, bool widen, T& e) {
  for_each_field<T>([&](const auto& f, std::size_t) {
    using M = typename std::remove_cvref_t<decltype(f)>::member_type;
    if (widen) {
      e.*(f.ptr) = detail::narrow_exact<M>(load_le<double>(src));
      src += 8;
    } else {
      e.*(f.ptr) = load_le<M>(src);
      src += sizeof(M);
    }
  });
}

/// Appends the row encoding of `seq` to `out`. Indirect arrays are encoded
/// one element per call; the other kinds walk their storage directly.
template <Persistent T>
void append_rows(const Sequence<T>& seq, bool widen, Bytes& out) {
  const std::size_t stride = row_stride<T>(widen);
  const std::size_t start = out.size();
  out.resize(start + seq.size() * stride);
  std::byte* dst = out.data() + start;
  if (seq.kind() == ContainerKind::IndirectArray) {
    for (std::size_t i = 0; i < seq.size(); ++i, dst += stride) encode_element(seq.get(i), widen, dst);
    return;
  }
  for_each_element(seq, [&](const T& e) {
    encode_element(e, widen, dst);
    dst += stride;
  });
}

template <Persistent T>
ByteBlock encode_row(const Sequence<T>& seq, bool widen) {
  Bytes out;
  append_rows(seq, widen, out);
  return ByteBlock::raw(std::move(out));
}

/// Clears `out` and fills it from a row encoding. Throws FormatError when
/// the length is not a multiple of the stride or a widened value does not
/// narrow back exactly.
template <Persistent T>
void decode_rows(ByteSpan bytes, bool widen, Sequence<T>& out) {
  const std::size_t stride = row_stride<T>(widen);
  if (stride == 0 || bytes.size() % stride != 0) {
    throw FormatError(std::string(ClassTraits<T>::name) + " row block of " + std::to_string(bytes.size()) +
                      " bytes is not a multiple of the " + std::to_string(stride) + "-byte stride");
  }
  out.clear();
  const std::size_t n = bytes.size() / stride;
  const std::byte* src = bytes.data();
  if (out.kind() == ContainerKind::SlotArray) {
    auto& slots = static_cast<SlotArray<T>&>(out);
    for (std::size_t i = 0; i < n; ++i, src += stride) decode_element(src, widen, slots.next_slot());
    return;
  }
  T tmp;
  for (std::size_t i = 0; i < n; ++i, src += stride) {
    decode_element(src, widen, tmp);
    out.add(tmp);
  }
}

template <Persistent T>
void decode_row(const ByteBlock& block, bool widen, Sequence<T>& out) {
  if (block.level != 0) {
    decode_rows(ByteSpan(decompress(block).bytes), widen, out);
  } else {
    decode_rows(ByteSpan(block.bytes), widen, out);
  }
}

// ---------------------------------------------------------------------------
// Column-wise (attribute-major) encoding, native widths.

/// Appends column `attr` of `seq` to `out`.
template <Persistent T>
void append_column(const Sequence<T>& seq, std::size_t attr, Bytes& out) {
  for_each_field<T>([&](const auto& f, std::size_t a) {
    if (a != attr) return;
    using M = typename std::remove_cvref_t<decltype(f)>::member_type;
    const std::size_t start = out.size();
    out.resize(start + seq.size() * sizeof(M));
    std::byte* dst = out.data() + start;
    if (seq.kind() == ContainerKind::IndirectArray) {
      for (std::size_t i = 0; i < seq.size(); ++i, dst += sizeof(M)) store_le(dst, seq.get(i).*(f.ptr));
      return;
    }
    for_each_element(seq, [&](const T& e) {
      store_le(dst, e.*(f.ptr));
      dst += sizeof(M);
    });
  });
}

template <Persistent T>
std::vector<ByteBlock> encode_columns(const Sequence<T>& seq) {
  std::vector<ByteBlock> blocks;
  blocks.reserve(attribute_count<T>());
  for (std::size_t a = 0; a < attribute_count<T>(); ++a) {
    Bytes out;
    append_column(seq, a, out);
    blocks.push_back(ByteBlock::raw(std::move(out)));
  }
  return blocks;
}

/// Clears `out` and fills `count` elements from one byte span per attribute.
template <Persistent T>
void decode_columns(std::span<const ByteSpan> columns, std::size_t count, Sequence<T>& out) {
  if (columns.size() != attribute_count<T>()) {
    throw FormatError(std::string(ClassTraits<T>::name) + ": expected " +
                      std::to_string(attribute_count<T>()) + " columns, got " +
                      std::to_string(columns.size()));
  }
  for_each_field<T>([&](const auto& f, std::size_t a) {
    using M = typename std::remove_cvref_t<decltype(f)>::member_type;
    if (columns[a].size() != count * sizeof(M)) {
      throw FormatError(std::string(ClassTraits<T>::name) + "." + std::string(f.name) + ": column of " +
                        std::to_string(columns[a].size()) + " bytes, expected " +
                        std::to_string(count * sizeof(M)));
    }
  });
  out.clear();
  auto fill = [&](auto&& element_at) {
    for_each_field<T>([&](const auto& f, std::size_t a) {
      using M = typename std::remove_cvref_t<decltype(f)>::member_type;
      const std::byte* src = columns[a].data();
      for (std::size_t i = 0; i < count; ++i, src += sizeof(M)) element_at(i).*(f.ptr) = load_le<M>(src);
    });
  };
  if (out.kind() == ContainerKind::SlotArray) {
    auto& slots = static_cast<SlotArray<T>&>(out);
    for (std::size_t i = 0; i < count; ++i) slots.next_slot();
    fill([&](std::size_t i) -> T& { return slots.slot_mut(i); });
    return;
  }
  std::vector<T> tmp(count);
  fill([&](std::size_t i) -> T& { return tmp[i]; });
  for (const T& e : tmp) out.add(e);
}

template <Persistent T>
void decode_columns(const std::vector<ByteBlock>& blocks, std::size_t count, Sequence<T>& out) {
  std::vector<ByteBlock> plain;
  std::vector<ByteSpan> spans;
  plain.reserve(blocks.size());
  for (const auto& b : blocks) plain.push_back(b.level == 0 ? b : decompress(b));
  for (const auto& b : plain) spans.emplace_back(b.bytes);
  decode_columns<T>(std::span<const ByteSpan>(spans), count, out);
}

}  // namespace crossbench
