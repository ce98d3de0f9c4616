#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "crossbench/event_model.hpp"

namespace crossbench {
namespace {

// Attribute widths written out by hand from the class descriptions; the
// library derives its sizes from the member types instead.
const std::vector<std::vector<int>> kWidths = {
    {8, 4, 4, 4, 4, 4, 4, 4, 4, 4, 2},  // GenParticle
    {4, 4, 4, 4, 4, 4, 2, 2, 2, 2, 2},  // SimVertex
    {8, 8, 8, 8, 4, 2},                 // SimTrack
    {4, 4, 4, 4, 4},                    // CaloHit
    {8, 8, 4, 4, 4, 4, 4, 4, 4, 4, 4, 4},  // TrackHit
};
const std::vector<double> kMeans = {351, 584, 169, 3282, 1871};

int sum(const std::vector<int>& v) {
  int s = 0;
  for (int w : v) s += w;
  return s;
}

TEST(Schema, RawSizesMatchHandTable) {
  const auto schemas = record_schemas<Event>();
  ASSERT_EQ(schemas.size(), kWidths.size());
  for (std::size_t c = 0; c < schemas.size(); ++c) {
    EXPECT_EQ(schema_raw_size(schemas[c]), static_cast<std::size_t>(sum(kWidths[c]))) << schemas[c].class_name;
    ASSERT_EQ(schemas[c].attributes.size(), kWidths[c].size());
    for (std::size_t a = 0; a < kWidths[c].size(); ++a) {
      EXPECT_EQ(schemas[c].attributes[a].width, kWidths[c][a]);
    }
  }
  EXPECT_EQ(raw_size_of<GenParticle>(), 46u);
  EXPECT_EQ(raw_size_of<SimVertex>(), 34u);
  EXPECT_EQ(raw_size_of<SimTrack>(), 38u);
  EXPECT_EQ(raw_size_of<CaloHit>(), 20u);
  EXPECT_EQ(raw_size_of<TrackHit>(), 56u);
}

TEST(Schema, AllDoubleSizes) {
  const auto schemas = record_schemas<Event>();
  for (std::size_t c = 0; c < schemas.size(); ++c) {
    EXPECT_EQ(schema_all_double_size(schemas[c]), 8 * kWidths[c].size());
  }
}

TEST(Schema, ExpectedEventBytesMatchesOracle) {
  double raw = 0;
  double wide = 0;
  for (std::size_t c = 0; c < kWidths.size(); ++c) {
    raw += kMeans[c] * sum(kWidths[c]);
    wide += kMeans[c] * 8.0 * static_cast<double>(kWidths[c].size());
  }
  EXPECT_EQ(raw, 212840.0);
  EXPECT_EQ(wide, 401288.0);
  EXPECT_EQ(expected_event_bytes(kMeanMultiplicities, SizeMode::Raw), raw);
  EXPECT_EQ(expected_event_bytes(kMeanMultiplicities, SizeMode::AllDouble), wide);
  EXPECT_EQ(std::lround(raw / 1024), 208);
  EXPECT_EQ(std::lround(wide / 1024), 392);
}

TEST(Schema, ExpectedBytesOfEmptyEventIsZero) {
  EXPECT_EQ(expected_event_bytes({0, 0, 0, 0, 0}, SizeMode::Raw), 0.0);
}

TEST(Schema, ValidateRejectsBadWidths) {
  ClassSchema s{"Bad", {{"a", 3, AttributeKind::Int}}};
  EXPECT_THROW(s.validate(), std::invalid_argument);
  ClassSchema half{"Half", {{"h", 2, AttributeKind::Float}}};
  EXPECT_THROW(half.validate(), std::invalid_argument);
  ClassSchema ok{"Ok", {{"h", 2, AttributeKind::Int}, {"d", 8, AttributeKind::Float}}};
  EXPECT_NO_THROW(ok.validate());
}

TEST(Schema, FirstDifferenceFindsAttribute) {
  CaloHit a;
  CaloHit b;
  EXPECT_EQ(first_difference(a, b), -1);
  b.cell_id = 4;
  EXPECT_EQ(first_difference(a, b), 2);
}

TEST(Schema, DigisSchemas) {
  const auto schemas = record_schemas<Digis>();
  ASSERT_EQ(schemas.size(), 2u);
  EXPECT_EQ(schemas[0].class_name, "CaloDigi");
  EXPECT_EQ(schema_raw_size(schemas[0]), 8u);
  EXPECT_EQ(schema_raw_size(schemas[1]), 12u);
}

}  // namespace
}  // namespace crossbench
