#include "crossbench/metrics.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace crossbench {

namespace {

constexpr std::string_view kCsvHeader =
    "manager,container,compression,split,basket,burst,jump,reduction,crossings,kb_per_event,"
    "read_s_per_crossing_mean,read_s_per_crossing_std,write_s_per_event,connect_ms_mean,file_switches_mean";
constexpr std::size_t kCsvColumns = 15;

std::string shortest(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

template <typename T>
T parse_number(std::string_view text, std::string_view column) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, value);
  if (res.ec != std::errc() || res.ptr != end) {
    throw FormatError("csv column " + std::string(column) + ": cannot parse '" + std::string(text) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

// Everything except the strategy identifies a table.
auto table_key(const JobConfig& c) {
  return std::make_tuple(c.compression, c.split, c.basket, c.burst, c.jump, c.reduction, c.crossings,
                         c.pileup_files, c.events_per_file, c.pileup);
}

std::string table_title(const JobConfig& c) {
  std::ostringstream os;
  os << "compression=" << c.compression << " split=" << c.split << " basket=" << c.basket << " burst=" << c.burst
     << " jump=" << c.jump << " reduction=" << c.reduction << " crossings=" << c.crossings;
  return os.str();
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.insert(0, width - s.size(), ' ');
  return s;
}

std::string table_header() {
  std::string h = pad("kb/event / s/crossing", 22);
  for (const char* name : {"Stl", "C", "Obj", "Clones"}) h += " |" + pad(name, 15);
  return h + "\n";
}

std::string manager_label(ManagerKind k) {
  switch (k) {
    case ManagerKind::Keys:
      return "Keys";
    case ManagerKind::Matrix:
      return "Matrix";
    case ManagerKind::Tree:
      return "Tree";
  }
  return "?";
}

}  // namespace

std::string format_3sig(double value) {
  if (!std::isfinite(value)) return "nan";
  if (value == 0) return "0";
  if (std::fabs(value) >= 1000) return std::to_string(std::llround(value));
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", value);
  return buf;
}

RunMetrics run_job(const JobConfig& config) {
  RunMetrics m;
  m.config = config;
  const InputFiles inputs = prepare_inputs(config);
  const auto digis_path = config.work_dir / ("digis." + std::string(store_extension(config.manager)));
  CrossingBuilder builder(config, inputs, digis_path);

  std::vector<double> read_seconds;
  read_seconds.reserve(config.crossings);
  double cpu_total = 0;
  double connect_seconds = 0;
  std::uint64_t connects = 0;
  std::uint64_t switches = 0;
  for (std::uint32_t n = 0; n < config.crossings; ++n) {
    const CrossingTimings t = builder.build_crossing(n);
    read_seconds.push_back(std::chrono::duration<double>(t.read()).count());
    cpu_total += t.read_cpu_seconds;
    connect_seconds += std::chrono::duration<double>(t.connect).count();
    connects += t.connects;
    switches += t.file_switches;
  }
  builder.finish();

  const double events = static_cast<double>(inputs.pileup_stats.entries);
  m.kb_per_event = events > 0 ? static_cast<double>(inputs.pileup_stats.total_bytes) / (1024.0 * events) : 0.0;
  m.write_s_per_event = events > 0 ? inputs.pileup_write_seconds / events : 0.0;
  m.crossings_built = read_seconds.size();
  if (!read_seconds.empty()) {
    double sum = 0;
    for (double s : read_seconds) sum += s;
    const double mean = sum / static_cast<double>(read_seconds.size());
    double var = 0;
    for (double s : read_seconds) var += (s - mean) * (s - mean);
    m.read_s_per_crossing_mean = mean;
    m.read_s_per_crossing_std =
        read_seconds.size() > 1 ? std::sqrt(var / static_cast<double>(read_seconds.size() - 1)) : 0.0;
    m.read_cpu_s_per_crossing_mean = cpu_total / static_cast<double>(read_seconds.size());
    m.file_switches_mean = static_cast<double>(switches) / static_cast<double>(read_seconds.size());
  }
  m.connect_ms_mean = connects > 0 ? 1000.0 * connect_seconds / static_cast<double>(connects) : 0.0;
  return m;
}

std::vector<RunMetrics> run_grid(const std::vector<JobConfig>& configs) {
  std::vector<RunMetrics> out;
  out.reserve(configs.size());
  for (const auto& c : configs) {
    try {
      out.push_back(run_job(c));
    } catch (const std::exception& e) {
      RunMetrics failed;
      failed.config = c;
      failed.error = e.what();
      const double nan = std::nan("");
      failed.kb_per_event = failed.read_s_per_crossing_mean = failed.read_s_per_crossing_std = nan;
      failed.write_s_per_event = failed.connect_ms_mean = failed.file_switches_mean = nan;
      out.push_back(std::move(failed));
    }
  }
  return out;
}

std::vector<JobConfig> expand_grid(const JobConfig& base, const GridAxes& axes) {
  auto or_base = []<typename T>(const std::vector<T>& values, T fallback) {
    return values.empty() ? std::vector<T>{fallback} : values;
  };
  const auto compression = or_base(axes.compression, base.compression);
  const auto split = or_base(axes.split, base.split);
  const auto burst = or_base(axes.burst, base.burst);
  const auto jump = or_base(axes.jump, base.jump);
  const auto managers = or_base(axes.managers, base.manager);
  const auto containers = or_base(axes.containers, base.container);
  std::vector<JobConfig> out;
  for (int level : compression) {
    for (int s : split) {
      for (std::uint32_t b : burst) {
        for (std::uint32_t j : jump) {
          for (auto manager : managers) {
            for (auto container : containers) {
              JobConfig c = base;
              c.compression = level;
              c.split = s;
              c.burst = b;
              c.jump = j;
              c.manager = manager;
              c.container = container;
              out.push_back(c);
            }
          }
        }
      }
    }
  }
  return out;
}

OutputFormat parse_output_format(std::string_view text) {
  if (text == "table") return OutputFormat::Table;
  if (text == "csv") return OutputFormat::Csv;
  throw std::invalid_argument("unknown format '" + std::string(text) + "' (expected table or csv)");
}

std::string emit(const std::vector<RunMetrics>& metrics, OutputFormat format) {
  std::ostringstream os;
  if (format == OutputFormat::Csv) {
    os << kCsvHeader << "\n";
    for (const auto& m : metrics) {
      const auto& c = m.config;
      os << to_string(c.manager) << ',' << short_name(c.container) << ',' << c.compression << ',' << c.split << ','
         << c.basket << ',' << c.burst << ',' << c.jump << ',' << c.reduction << ',' << c.crossings << ','
         << shortest(m.kb_per_event) << ',' << shortest(m.read_s_per_crossing_mean) << ','
         << shortest(m.read_s_per_crossing_std) << ',' << shortest(m.write_s_per_event) << ','
         << shortest(m.connect_ms_mean) << ',' << shortest(m.file_switches_mean) << "\n";
    }
    return os.str();
  }

  if (metrics.empty()) return table_header();
  // Group cells into tables, keeping first-seen order.
  std::vector<decltype(table_key(JobConfig{}))> order;
  std::map<decltype(table_key(JobConfig{})), std::vector<const RunMetrics*>> groups;
  for (const auto& m : metrics) {
    const auto key = table_key(m.config);
    if (!groups.contains(key)) order.push_back(key);
    groups[key].push_back(&m);
  }
  bool first = true;
  for (const auto& key : order) {
    const auto& cells = groups[key];
    if (!first) os << "\n";
    first = false;
    os << table_title(cells.front()->config) << "\n" << table_header();
    for (auto manager : kAllManagerKinds) {
      os << pad(manager_label(manager), 22);
      for (auto container : kAllContainerKinds) {
        std::string cell = "-";
        for (const auto* m : cells) {
          if (m->config.manager != manager || m->config.container != container) continue;
          cell = m->error.empty() ? format_3sig(m->kb_per_event) + " / " + format_3sig(m->read_s_per_crossing_mean)
                                  : "error";
        }
        os << " |" << pad(cell, 15);
      }
      os << "\n";
    }
  }
  return os.str();
}

std::vector<RunMetrics> parse_csv(std::string_view text) {
  std::vector<RunMetrics> out;
  bool header_seen = false;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != kCsvHeader) throw FormatError("unexpected csv header");
      header_seen = true;
      continue;
    }
    const auto f = split(line, ',');
    if (f.size() != kCsvColumns) {
      throw FormatError("csv row has " + std::to_string(f.size()) + " columns, expected " + std::to_string(kCsvColumns));
    }
    RunMetrics m;
    try {
      m.config.manager = parse_manager_kind(f[0]);
      m.config.container = parse_container_kind(f[1]);
    } catch (const std::invalid_argument& e) {
      throw FormatError(e.what());
    }
    m.config.compression = parse_number<int>(f[2], "compression");
    m.config.split = parse_number<int>(f[3], "split");
    m.config.basket = parse_number<std::uint32_t>(f[4], "basket");
    m.config.burst = parse_number<std::uint32_t>(f[5], "burst");
    m.config.jump = parse_number<std::uint32_t>(f[6], "jump");
    m.config.reduction = parse_number<std::uint32_t>(f[7], "reduction");
    m.config.crossings = parse_number<std::uint32_t>(f[8], "crossings");
    m.kb_per_event = parse_number<double>(f[9], "kb_per_event");
    m.read_s_per_crossing_mean = parse_number<double>(f[10], "read_s_per_crossing_mean");
    m.read_s_per_crossing_std = parse_number<double>(f[11], "read_s_per_crossing_std");
    m.write_s_per_event = parse_number<double>(f[12], "write_s_per_event");
    m.connect_ms_mean = parse_number<double>(f[13], "connect_ms_mean");
    m.file_switches_mean = parse_number<double>(f[14], "file_switches_mean");
    m.crossings_built = m.config.crossings;
    out.push_back(std::move(m));
  }
  if (!header_seen) throw FormatError("csv input has no header");
  return out;
}

}  // namespace crossbench
