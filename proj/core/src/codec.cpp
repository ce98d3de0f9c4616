#include "crossbench/codec.hpp"

#include <zlib.h>

#include <stdexcept>

namespace crossbench {

ByteBlock compress(ByteSpan data, int level) {
  if (level < 0 || level > 9) throw std::invalid_argument("compression level must be within 0-9");
  ByteBlock out;
  out.uncompressed_length = data.size();
  out.level = static_cast<std::uint8_t>(level);
  if (level == 0) {
    out.bytes.assign(data.begin(), data.end());
    return out;
  }
  uLongf capacity = compressBound(static_cast<uLong>(data.size()));
  out.bytes.resize(capacity);
  const int rc = compress2(reinterpret_cast<Bytef*>(out.bytes.data()), &capacity,
                           reinterpret_cast<const Bytef*>(data.data()), static_cast<uLong>(data.size()), level);
  if (rc != Z_OK) throw std::runtime_error("zlib compress2 failed with code " + std::to_string(rc));
  out.bytes.resize(capacity);
  return out;
}

Bytes decompress_bytes(ByteSpan stored, std::uint64_t uncompressed_length, int level) {
  if (level == 0) {
    if (stored.size() != uncompressed_length) {
      throw FormatError("stored block length " + std::to_string(stored.size()) + " does not match declared " +
                        std::to_string(uncompressed_length));
    }
    return Bytes(stored.begin(), stored.end());
  }
  // Deflate cannot expand data by more than about 1032:1.
  if (uncompressed_length > 1032 * static_cast<std::uint64_t>(stored.size()) + 64) {
    throw FormatError("declared length " + std::to_string(uncompressed_length) + " is impossible for a " +
                      std::to_string(stored.size()) + "-byte compressed block");
  }
  Bytes out(uncompressed_length);
  uLongf produced = static_cast<uLongf>(uncompressed_length);
  const int rc = uncompress(reinterpret_cast<Bytef*>(out.data()), &produced,
                            reinterpret_cast<const Bytef*>(stored.data()), static_cast<uLong>(stored.size()));
  if (rc != Z_OK) {
    throw FormatError(std::string("corrupt compressed block (zlib: ") + zError(rc) + ")");
  }
  if (produced != uncompressed_length) {
    throw FormatError("decompressed " + std::to_string(produced) + " bytes, declared " +
                      std::to_string(uncompressed_length));
  }
  return out;
}

ByteBlock decompress(const ByteBlock& block) {
  return ByteBlock::raw(decompress_bytes(block.bytes, block.uncompressed_length, block.level));
}

void serialize_block(const ByteBlock& block, Bytes& out) {
  ByteWriter w(out);
  w.put(block.level);
  w.put(block.uncompressed_length);
  w.put_bytes(block.bytes);
}

ByteBlock parse_block(ByteSpan framed) {
  ByteReader r(framed);
  ByteBlock b;
  b.level = r.get<std::uint8_t>();
  if (b.level > 9) throw FormatError("block compression level " + std::to_string(b.level) + " out of range");
  b.uncompressed_length = r.get<std::uint64_t>();
  const auto body = r.get_bytes(r.remaining());
  b.bytes.assign(body.begin(), body.end());
  return b;
}

}  // namespace crossbench
