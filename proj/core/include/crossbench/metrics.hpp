#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "crossbench/pipeline.hpp"

namespace crossbench {

/// Measured outputs of one grid cell. Sizes are those of one pileup file.
struct RunMetrics {
  JobConfig config;
  double kb_per_event = 0;  // file bytes / (1024 × events)
  double read_s_per_crossing_mean = 0;
  double read_s_per_crossing_std = 0;
  double read_cpu_s_per_crossing_mean = 0;
  double write_s_per_event = 0;
  double connect_ms_mean = 0;  // per connect call
  double file_switches_mean = 0;  // per crossing
  std::uint64_t crossings_built = 0;
  std::string error;  // non-empty when the cell failed
};

/// Prepares inputs, builds every crossing and summarises one cell. The
/// crossing loop is single-threaded.
RunMetrics run_job(const JobConfig& config);

/// Runs cells one after another; a failing cell is reported through
/// RunMetrics::error and does not stop the grid.
std::vector<RunMetrics> run_grid(const std::vector<JobConfig>& configs);

/// Cartesian expansion of the given value lists around a base config. An
/// empty list keeps the base config's value.
struct GridAxes {
  std::vector<ManagerKind> managers{kAllManagerKinds.begin(), kAllManagerKinds.end()};
  std::vector<ContainerKind> containers{kAllContainerKinds.begin(), kAllContainerKinds.end()};
  std::vector<int> compression{1};
  std::vector<int> split{99};
  std::vector<std::uint32_t> burst;
  std::vector<std::uint32_t> jump;
};
std::vector<JobConfig> expand_grid(const JobConfig& base, const GridAxes& axes);

enum class OutputFormat { Table, Csv };
OutputFormat parse_output_format(std::string_view text);

/// Table: one managers × containers block per distinct remaining
/// configuration, each cell "kb/event / s/crossing". Csv: one row per cell.
std::string emit(const std::vector<RunMetrics>& metrics, OutputFormat format);

/// Inverse of emit(..., Csv). Throws FormatError on malformed input.
std::vector<RunMetrics> parse_csv(std::string_view text);

/// Three significant digits, as printed in the tables.
std::string format_3sig(double value);

}  // namespace crossbench
