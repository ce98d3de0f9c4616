#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "crossbench/metrics.hpp"
#include "crossbench/pipeline.hpp"

namespace cb = crossbench;

namespace {

struct Options {
  std::vector<std::string> managers{"keys", "matrix", "tree"};
  std::vector<std::string> containers{"stl", "c", "obj", "clones"};
  std::vector<int> compression{1};
  std::vector<int> split{99};
  std::vector<std::uint32_t> burst{3};
  std::vector<std::uint32_t> jump{10};
  std::uint32_t basket = cb::kDefaultBasketSize;
  std::uint32_t reduction = 10;
  std::uint32_t crossings = 100;
  std::uint32_t files = 10;
  std::uint32_t events_per_file = 100;
  std::uint32_t pileup = cb::kPileupPerCrossing;
  std::uint64_t seed = 1;
  bool full_scale = false;
  bool distinct_files = false;
  std::string work_dir = "crossbench-work";
  std::string out;
  std::string format = "table";
};

void add_job_options(CLI::App& cmd, Options& o) {
  cmd.add_option("--manager", o.managers, "Persistency managers: keys, matrix, tree")->delimiter(',');
  cmd.add_option("--container", o.containers, "Containers: stl, c, obj, clones")->delimiter(',');
  cmd.add_option("--compression", o.compression, "Compression levels 0-9")
      ->delimiter(',')
      ->check(CLI::Range(0, 9));
  cmd.add_option("--split", o.split, "Tree split levels (0 or 99)")->delimiter(',');
  cmd.add_option("--basket", o.basket, "Basket size in bytes")->check(CLI::PositiveNumber);
  cmd.add_option("--burst", o.burst, "Consecutive pileup entries per group")->delimiter(',');
  cmd.add_option("--jump", o.jump, "Maximum random skip after each group")->delimiter(',');
  cmd.add_option("--reduction", o.reduction, "Divisor of the per-class multiplicities")->check(CLI::PositiveNumber);
  cmd.add_option("--crossings", o.crossings, "Crossings to build")->check(CLI::PositiveNumber);
  cmd.add_option("--files", o.files, "Pileup files in the chain")->check(CLI::PositiveNumber);
  cmd.add_option("--events-per-file", o.events_per_file, "Events per pileup file")->check(CLI::PositiveNumber);
  cmd.add_option("--pileup", o.pileup, "Pileup events per crossing")->check(CLI::Range(0u, cb::kPileupPerCrossing));
  cmd.add_option("--seed", o.seed, "Generator and selection seed");
  cmd.add_flag("--full-scale", o.full_scale,
               "Full-size events, 500 crossings, 100 files of 500 events (explicit flags still win)");
  cmd.add_flag("--distinct-files", o.distinct_files, "Generate every pileup file instead of copying the first");
  cmd.add_option("--work-dir", o.work_dir, "Directory for generated files");
}

cb::JobConfig base_config(const CLI::App& cmd, const Options& o) {
  cb::JobConfig c;
  if (o.full_scale) c = cb::JobConfig::full_scale();
  auto given = [&](const char* name) { return cmd.count(name) > 0; };
  if (!o.full_scale || given("--reduction")) c.reduction = o.reduction;
  if (!o.full_scale || given("--crossings")) c.crossings = o.crossings;
  if (!o.full_scale || given("--files")) c.pileup_files = o.files;
  if (!o.full_scale || given("--events-per-file")) c.events_per_file = o.events_per_file;
  c.basket = o.basket;
  c.pileup = o.pileup;
  c.seed = o.seed;
  c.burst = o.burst.front();
  c.jump = o.jump.front();
  c.compression = o.compression.front();
  c.split = o.split.front();
  c.distinct_pileup_files = o.distinct_files;
  c.work_dir = o.work_dir;
  return c;
}

cb::GridAxes axes_of(const Options& o) {
  cb::GridAxes a;
  a.managers.clear();
  for (const auto& m : o.managers) a.managers.push_back(cb::parse_manager_kind(m));
  a.containers.clear();
  for (const auto& c : o.containers) a.containers.push_back(cb::parse_container_kind(c));
  a.compression = o.compression;
  a.split = o.split;
  a.burst = o.burst;
  a.jump = o.jump;
  return a;
}

void write_output(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(out);
  if (!file) throw std::runtime_error("cannot write '" + out + "'");
  file << text;
}

std::string describe(const cb::Mismatch& m) {
  std::ostringstream os;
  os << cb::to_string(m.manager) << "/" << cb::short_name(m.container) << " entry " << m.entry;
  if (!m.class_name.empty()) os << " " << m.class_name;
  if (m.element >= 0) os << "[" << m.element << "]";
  if (!m.attribute.empty()) os << "." << m.attribute;
  os << ": " << m.detail;
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pileup-mixing persistency benchmark"};
  app.require_subcommand(1);

  Options run_opts;
  auto* run = app.add_subcommand("run", "Run a strategy grid and report sizes and read times");
  add_job_options(*run, run_opts);
  run->add_option("--out", run_opts.out, "Write the report to this file instead of stdout");
  run->add_option("--format", run_opts.format, "table or csv")->check(CLI::IsMember({"table", "csv"}));

  Options verify_opts;
  auto* verify = app.add_subcommand("verify", "Check that every strategy reads back what the matrix store holds");
  add_job_options(*verify, verify_opts);

  std::string emit_in;
  std::string emit_out;
  std::string emit_format = "table";
  auto* emit = app.add_subcommand("emit", "Re-render a CSV report without re-running");
  emit->add_option("csv", emit_in, "CSV file written by 'run --format csv'")->required()->check(CLI::ExistingFile);
  emit->add_option("--out", emit_out, "Write to this file instead of stdout");
  emit->add_option("--format", emit_format, "table or csv")->check(CLI::IsMember({"table", "csv"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      const auto configs = cb::expand_grid(base_config(*run, run_opts), axes_of(run_opts));
      for (const auto& c : configs) c.validate();
      const auto metrics = cb::run_grid(configs);
      int failed = 0;
      for (const auto& m : metrics) {
        if (m.error.empty()) continue;
        ++failed;
        std::cerr << "cell " << cb::to_string(m.config.manager) << "/" << cb::short_name(m.config.container)
                  << " failed: " << m.error << "\n";
      }
      write_output(cb::emit(metrics, cb::parse_output_format(run_opts.format)), run_opts.out);
      return failed == 0 ? 0 : 2;
    }
    if (*verify) {
      const cb::JobConfig base = base_config(*verify, verify_opts);
      std::size_t mismatches = 0;
      for (int level : verify_opts.compression) {
        for (int split : verify_opts.split) {
          cb::JobConfig c = base;
          c.compression = level;
          c.split = split;
          const auto report = cb::verify_strategies(c);
          std::cout << "compression=" << level << " split=" << split << ": " << report.strategies_checked
                    << " strategies, " << report.entries_checked << " entries, " << report.mismatches.size()
                    << " mismatches\n";
          for (const auto& m : report.mismatches) std::cout << "  " << describe(m) << "\n";
          mismatches += report.mismatches.size();
        }
      }
      return mismatches == 0 ? 0 : 1;
    }
    if (*emit) {
      std::ifstream in(emit_in);
      std::stringstream buf;
      buf << in.rdbuf();
      write_output(cb::emit(cb::parse_csv(buf.str()), cb::parse_output_format(emit_format)), emit_out);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "crossbench: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
