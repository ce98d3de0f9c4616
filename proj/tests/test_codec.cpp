#include <gtest/gtest.h>

#include <limits>

#include "crossbench/codec.hpp"
#include "crossbench/event_model.hpp"
#include "crossbench/generator.hpp"
#include "test_support.hpp"

namespace crossbench {
namespace {

Bytes sample_bytes(std::size_t n) {
  Bytes b(n);
  for (std::size_t i = 0; i < n; ++i) b[i] = static_cast<std::byte>((i * 7 + i / 13) % 251);
  return b;
}

TEST(Codec, RowStrides) {
  EXPECT_EQ(row_stride<GenParticle>(false), 46u);
  EXPECT_EQ(row_stride<GenParticle>(true), 88u);
  EXPECT_EQ(row_stride<TrackHit>(true), 96u);
}

class CodecKinds : public ::testing::TestWithParam<ContainerKind> {};

TEST_P(CodecKinds, RowRoundTripNativeAndWide) {
  const Event e = generate_event(11, 4, 20, GetParam());
  for (bool widen : {false, true}) {
    const ByteBlock block = encode_row(*e.track_hits, widen);
    EXPECT_EQ(block.bytes.size(), e.track_hits->size() * row_stride<TrackHit>(widen));
    auto back = make_sequence<TrackHit>(GetParam());
    decode_row(block, widen, *back);
    EXPECT_TRUE(same_elements(*e.track_hits, *back));
  }
}

TEST_P(CodecKinds, ColumnRoundTripAtEveryLevel) {
  const Event e = generate_event(11, 5, 20, GetParam());
  const auto raw = encode_columns(*e.gen_particles);
  ASSERT_EQ(raw.size(), attribute_count<GenParticle>());
  EXPECT_EQ(raw[0].bytes.size(), e.gen_particles->size() * 8);
  EXPECT_EQ(raw[10].bytes.size(), e.gen_particles->size() * 2);
  for (int level = 0; level <= 9; ++level) {
    std::vector<ByteBlock> stored;
    for (const auto& b : raw) stored.push_back(compress(b, level));
    auto back = make_sequence<GenParticle>(GetParam());
    decode_columns(stored, e.gen_particles->size(), *back);
    EXPECT_TRUE(same_elements(*e.gen_particles, *back)) << "level " << level;
  }
}

INSTANTIATE_TEST_SUITE_P(Codec, CodecKinds, ::testing::ValuesIn(kAllContainerKinds),
                         [](const auto& info) { return std::string(short_name(info.param)); });

TEST(Codec, CompressRoundTripAllLevels) {
  const Bytes data = sample_bytes(100000);
  for (int level = 0; level <= 9; ++level) {
    const ByteBlock c = compress(data, level);
    EXPECT_EQ(c.level, level);
    EXPECT_EQ(c.uncompressed_length, data.size());
    EXPECT_EQ(decompress(c).bytes, data);
    Bytes framed;
    serialize_block(c, framed);
    const ByteBlock parsed = parse_block(framed);
    EXPECT_EQ(decompress(parsed).bytes, data);
  }
}

TEST(Codec, LevelZeroIsVerbatimWithSmallOverhead) {
  const Bytes data = sample_bytes(5000);
  const ByteBlock c = compress(data, 0);
  EXPECT_EQ(c.bytes, data);
  Bytes framed;
  serialize_block(c, framed);
  EXPECT_LE(framed.size() - data.size(), 64u);
  EXPECT_EQ(framed.size() - data.size(), kBlockFrameBytes);
}

TEST(Codec, EmptyInput) {
  for (int level : {0, 1, 9}) {
    const ByteBlock c = compress(ByteSpan{}, level);
    EXPECT_TRUE(decompress(c).bytes.empty());
  }
}

TEST(Codec, InvalidLevelRejected) {
  EXPECT_THROW(compress(sample_bytes(4), 10), std::invalid_argument);
  EXPECT_THROW(compress(sample_bytes(4), -1), std::invalid_argument);
  Bytes framed{std::byte{12}};
  append_le(framed, std::uint64_t{0});
  EXPECT_THROW(parse_block(framed), FormatError);
}

TEST(Codec, CorruptStreamsRaiseFormatError) {
  const Bytes data = sample_bytes(20000);
  ByteBlock c = compress(data, 6);
  ByteBlock truncated = c;
  truncated.bytes.resize(truncated.bytes.size() / 2);
  EXPECT_THROW(decompress(truncated), FormatError);
  ByteBlock garbage = c;
  for (std::size_t i = 2; i < 40; ++i) garbage.bytes[i] = std::byte{0xff};
  EXPECT_THROW(decompress(garbage), FormatError);
  ByteBlock wrong_length = c;
  wrong_length.uncompressed_length -= 1;
  EXPECT_THROW(decompress(wrong_length), FormatError);
  ByteBlock impossible = c;
  impossible.uncompressed_length = std::numeric_limits<std::uint64_t>::max() / 2;
  EXPECT_THROW(decompress(impossible), FormatError);
  ByteBlock raw = compress(data, 0);
  raw.uncompressed_length += 1;
  EXPECT_THROW(decompress(raw), FormatError);
  EXPECT_THROW(parse_block(Bytes(5)), FormatError);
}

TEST(Codec, DecodeRowsRejectsPartialRows) {
  auto seq = make_sequence<CaloHit>(ContainerKind::ValueSeq);
  EXPECT_THROW(decode_rows(ByteSpan(sample_bytes(21)), false, *seq), FormatError);
  EXPECT_THROW(decode_rows(ByteSpan(sample_bytes(41)), true, *seq), FormatError);
  EXPECT_NO_THROW(decode_rows(ByteSpan(sample_bytes(40)), false, *seq));
  EXPECT_EQ(seq->size(), 2u);
}

TEST(Codec, DecodeColumnsChecksShape) {
  const Event e = testing::hand_event(1);
  auto cols = encode_columns(*e.calo_hits);
  auto seq = make_sequence<CaloHit>(ContainerKind::ValueSeq);
  EXPECT_THROW(decode_columns(cols, 5, *seq), FormatError);
  cols.pop_back();
  EXPECT_THROW(decode_columns(cols, 4, *seq), FormatError);
}

TEST(Codec, WideValuesMustNarrowExactly) {
  auto seq = make_sequence<CaloHit>(ContainerKind::ValueSeq);
  Bytes row;
  for (double v : {0.1, 20.0, 5.0, 1.0, 1.0}) append_le(row, v);  // 0.1 is not a float
  EXPECT_THROW(decode_rows(ByteSpan(row), true, *seq), FormatError);
  row.clear();
  for (double v : {0.5, 20.0, 5.5, 1.0, 1.0}) append_le(row, v);  // fractional cell id
  EXPECT_THROW(decode_rows(ByteSpan(row), true, *seq), FormatError);
  row.clear();
  for (double v : {0.5, 20.0, 3e10, 1.0, 1.0}) append_le(row, v);  // beyond int32
  EXPECT_THROW(decode_rows(ByteSpan(row), true, *seq), FormatError);
  row.clear();
  for (double v : {0.5, 20.0, -7.0, 1.0, 1.0}) append_le(row, v);
  ASSERT_NO_THROW(decode_rows(ByteSpan(row), true, *seq));
  EXPECT_EQ(seq->get(0).cell_id, -7);
}

}  // namespace
}  // namespace crossbench
