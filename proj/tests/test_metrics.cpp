#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "crossbench/metrics.hpp"
#include "test_support.hpp"

namespace crossbench {
namespace {

using testing::TempDir;

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::vector<RunMetrics> synthetic_grid() {
  std::vector<RunMetrics> out;
  double v = 1;
  for (const auto& c : expand_grid(JobConfig{}, GridAxes{})) {
    RunMetrics m;
    m.config = c;
    m.kb_per_event = 100 + v;
    m.read_s_per_crossing_mean = 0.01 * v;
    m.read_s_per_crossing_std = 0.001 * v;
    m.write_s_per_event = 1e-4 / v;
    m.connect_ms_mean = 0.3 * v;
    m.file_switches_mean = v / 7;
    v += 1;
    out.push_back(m);
  }
  return out;
}

TEST(Grid, DefaultIsTwelveCells) {
  const auto cells = expand_grid(JobConfig{}, GridAxes{});
  ASSERT_EQ(cells.size(), 12u);
  EXPECT_EQ(cells.front().manager, ManagerKind::Keys);
  EXPECT_EQ(cells.front().container, ContainerKind::ValueSeq);
  EXPECT_EQ(cells.back().manager, ManagerKind::Tree);
  EXPECT_EQ(cells.back().container, ContainerKind::SlotArray);
  GridAxes axes;
  axes.compression = {0, 1};
  EXPECT_EQ(expand_grid(JobConfig{}, axes).size(), 24u);
  axes.managers = {ManagerKind::Tree};
  axes.containers = {ContainerKind::SlotArray};
  axes.compression = {1};
  EXPECT_EQ(expand_grid(JobConfig{}, axes).size(), 1u);
  axes.burst = {1, 3};
  axes.jump = {10, 1000};
  const auto random = expand_grid(JobConfig{}, axes);
  ASSERT_EQ(random.size(), 4u);
  EXPECT_EQ(random[1].burst, 1u);
  EXPECT_EQ(random[1].jump, 1000u);
  axes.managers.clear();
  JobConfig base;
  base.manager = ManagerKind::Keys;
  EXPECT_EQ(expand_grid(base, axes).front().manager, ManagerKind::Keys);
}

TEST(Emit, TableShape) {
  auto metrics = synthetic_grid();
  metrics[0].kb_per_event = 152;
  metrics[0].read_s_per_crossing_mean = 3.16;
  metrics[5].error = "disk full";
  const auto out = lines(emit(metrics, OutputFormat::Table));
  ASSERT_EQ(out.size(), 5u);  // title, header, three manager rows
  EXPECT_NE(out[1].find("Stl"), std::string::npos);
  EXPECT_NE(out[1].find("Clones"), std::string::npos);
  EXPECT_NE(out[2].find("Keys"), std::string::npos);
  EXPECT_NE(out[2].find("152 / 3.16"), std::string::npos);
  EXPECT_NE(out[3].find("Matrix"), std::string::npos);
  EXPECT_NE(out[3].find("error"), std::string::npos);
  EXPECT_NE(out[4].find("Tree"), std::string::npos);
  for (std::size_t i = 2; i < 5; ++i) {
    EXPECT_EQ(std::count(out[i].begin(), out[i].end(), '|'), 4) << out[i];
  }
}

TEST(Emit, SeparateTablesPerConfiguration) {
  GridAxes axes;
  axes.compression = {0, 1};
  std::vector<RunMetrics> metrics;
  for (const auto& c : expand_grid(JobConfig{}, axes)) {
    RunMetrics m;
    m.config = c;
    metrics.push_back(m);
  }
  const auto out = lines(emit(metrics, OutputFormat::Table));
  EXPECT_EQ(out.size(), 11u);  // two blocks of five plus a blank line
}

TEST(Emit, MissingCellsShowDash) {
  auto metrics = synthetic_grid();
  metrics.resize(1);
  const auto out = lines(emit(metrics, OutputFormat::Table));
  ASSERT_EQ(out.size(), 5u);
  EXPECT_NE(out[4].find('-'), std::string::npos);
}

TEST(Emit, EmptyIsHeaderOnly) {
  EXPECT_EQ(lines(emit({}, OutputFormat::Table)).size(), 1u);
  const auto csv = lines(emit({}, OutputFormat::Csv));
  ASSERT_EQ(csv.size(), 1u);
  EXPECT_EQ(csv[0].rfind("manager,container,compression", 0), 0u);
  EXPECT_TRUE(parse_csv(emit({}, OutputFormat::Csv)).empty());
}

TEST(Emit, CsvRoundTrip) {
  const auto metrics = synthetic_grid();
  const std::string csv = emit(metrics, OutputFormat::Csv);
  EXPECT_EQ(lines(csv).size(), 13u);
  const auto back = parse_csv(csv);
  ASSERT_EQ(back.size(), metrics.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    EXPECT_EQ(back[i].config.manager, metrics[i].config.manager);
    EXPECT_EQ(back[i].config.container, metrics[i].config.container);
    EXPECT_EQ(back[i].config.compression, metrics[i].config.compression);
    EXPECT_EQ(back[i].config.split, metrics[i].config.split);
    EXPECT_EQ(back[i].config.crossings, metrics[i].config.crossings);
    EXPECT_EQ(back[i].kb_per_event, metrics[i].kb_per_event);
    EXPECT_EQ(back[i].read_s_per_crossing_mean, metrics[i].read_s_per_crossing_mean);
    EXPECT_EQ(back[i].read_s_per_crossing_std, metrics[i].read_s_per_crossing_std);
    EXPECT_EQ(back[i].write_s_per_event, metrics[i].write_s_per_event);
    EXPECT_EQ(back[i].connect_ms_mean, metrics[i].connect_ms_mean);
    EXPECT_EQ(back[i].file_switches_mean, metrics[i].file_switches_mean);
  }
  EXPECT_EQ(emit(back, OutputFormat::Csv), csv);
  EXPECT_EQ(emit(back, OutputFormat::Table), emit(metrics, OutputFormat::Table));
}

TEST(Emit, CsvRejectsMalformedInput) {
  EXPECT_THROW(parse_csv("not,a,header\n"), FormatError);
  std::string csv = emit(synthetic_grid(), OutputFormat::Csv);
  EXPECT_THROW(parse_csv(csv + "keys,stl,1\n"), FormatError);
  const auto header = lines(csv)[0];
  EXPECT_THROW(parse_csv(header + "\nkeys,stl,x,99,8000,3,10,10,100,1,1,1,1,1,1\n"), FormatError);
  EXPECT_THROW(parse_csv(header + "\nblob,stl,1,99,8000,3,10,10,100,1,1,1,1,1,1\n"), FormatError);
}

TEST(Format, ThreeSignificantDigits) {
  EXPECT_EQ(format_3sig(152.3), "152");
  EXPECT_EQ(format_3sig(3.1612), "3.16");
  EXPECT_EQ(format_3sig(0.000123456), "0.000123");
  EXPECT_EQ(format_3sig(0), "0");
  EXPECT_EQ(format_3sig(std::nan("")), "nan");
  EXPECT_EQ(format_3sig(400.4), "400");
}

TEST(RunGrid, FailingCellDoesNotStopGrid) {
  TempDir dir("grid");
  JobConfig good;
  good.reduction = 200;
  good.crossings = 2;
  good.pileup_files = 2;
  good.events_per_file = 10;
  good.pileup = 5;
  good.work_dir = dir / "ok";
  JobConfig bad = good;
  bad.container = ContainerKind::ValueSeq;
  testing::write_file(dir / "blocker", "x");
  bad.work_dir = dir / "blocker" / "sub";
  const auto metrics = run_grid({bad, good});
  ASSERT_EQ(metrics.size(), 2u);
  EXPECT_FALSE(metrics[0].error.empty());
  EXPECT_TRUE(std::isnan(metrics[0].kb_per_event));
  EXPECT_TRUE(metrics[1].error.empty()) << metrics[1].error;
  EXPECT_EQ(metrics[1].crossings_built, 2u);
  const auto size = std::filesystem::file_size(good.work_dir / "minbias_000.rtbt");
  EXPECT_DOUBLE_EQ(metrics[1].kb_per_event, static_cast<double>(size) / (1024.0 * 10));
  EXPECT_GT(metrics[1].read_s_per_crossing_mean, 0.0);
  EXPECT_NE(emit(metrics, OutputFormat::Table).find("error"), std::string::npos);
}

TEST(Output, ParseFormat) {
  EXPECT_EQ(parse_output_format("csv"), OutputFormat::Csv);
  EXPECT_EQ(parse_output_format("table"), OutputFormat::Table);
  EXPECT_THROW(parse_output_format("json"), std::invalid_argument);
}

}  // namespace
}  // namespace crossbench
