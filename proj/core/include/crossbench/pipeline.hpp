#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "crossbench/containers.hpp"
#include "crossbench/digitizer.hpp"
#include "crossbench/event_model.hpp"
#include "crossbench/managers.hpp"
#include "crossbench/selection.hpp"

namespace crossbench {

inline constexpr std::uint32_t kPileupPerCrossing = 153;

/// One job: a cell of the strategy grid plus the workload around it.
struct JobConfig {
  ContainerKind container = ContainerKind::SlotArray;
  ManagerKind manager = ManagerKind::Tree;
  int compression = 1;
  int split = 99;
  std::uint32_t basket = kDefaultBasketSize;
  std::uint32_t burst = 3;
  std::uint32_t jump = 10;
  std::uint32_t reduction = 10;
  std::uint32_t crossings = 100;
  std::uint32_t signal_events = 0;  // 0: one per crossing
  std::uint32_t pileup_files = 10;
  std::uint32_t events_per_file = 100;
  std::uint32_t pileup = kPileupPerCrossing;
  std::uint64_t seed = 1;
  std::uint64_t rank_seed = 0;  // 0: derived from seed
  bool distinct_pileup_files = false;  // default: replicas of one file
  bool manager_per_file = false;       // default: one reconnected manager
  float digi_threshold = kDefaultDigiThreshold;
  std::filesystem::path work_dir = "crossbench-work";

  /// Desk-scale defaults scaled up to the full use case: 500 crossings,
  /// 100 files of 500 events, full-size events.
  static JobConfig full_scale();

  std::uint32_t signal_event_count() const { return signal_events != 0 ? signal_events : crossings; }
  std::uint64_t effective_rank_seed() const { return rank_seed != 0 ? rank_seed : mix_seed(seed, 0x52414e4bULL); }
  StoreOptions store_options(std::string folder_name) const;

  /// Throws std::invalid_argument on inconsistent settings.
  void validate() const;
};

/// Named in-memory folders of one crossing: crossing/signal,
/// crossing/minbias0..N-1 and crossing/digis.
class FolderRegistry {
 public:
  explicit FolderRegistry(ContainerKind kind, std::uint32_t minbias_slots = kPileupPerCrossing);

  Event& signal() { return signal_; }
  Event& minbias(std::size_t slot) { return minbias_.at(slot); }
  const Event& minbias(std::size_t slot) const { return minbias_.at(slot); }
  Digis& digis() { return digis_; }
  const Digis& digis() const { return digis_; }
  std::size_t minbias_slots() const { return minbias_.size(); }

  /// Event folder by name; throws std::out_of_range.
  Event& event(std::string_view name);
  std::vector<std::string> names() const;

  static std::string minbias_name(std::size_t slot);

 private:
  Event signal_;
  std::vector<Event> minbias_;
  Digis digis_;
};

struct InputFiles {
  std::filesystem::path signal;
  std::vector<std::filesystem::path> pileup;
  FileStats signal_stats;
  FileStats pileup_stats;  // of the first pileup file
  double pileup_write_seconds = 0;
};

/// File extension used for a manager's files.
std::string_view store_extension(ManagerKind kind);

/// Generates and writes the signal file and the pileup files for `config`.
InputFiles prepare_inputs(const JobConfig& config);

struct CrossingTimings {
  std::chrono::nanoseconds signal_read{0};
  std::chrono::nanoseconds pileup_read{0};  // includes connect time
  std::chrono::nanoseconds connect{0};
  std::chrono::nanoseconds digitize{0};
  std::chrono::nanoseconds write{0};
  std::chrono::nanoseconds total{0};
  double read_cpu_seconds = 0;  // process CPU time over signal + pileup reads
  std::uint64_t connects = 0;
  std::uint64_t file_switches = 0;  // from the selection of this crossing

  std::chrono::nanoseconds read() const { return signal_read + pileup_read; }
};

/// State of a crossing-building job: folders, the signal reader, one
/// pileup reader that is reconnected before every pileup read, the digis
/// writer and the selection cursor.
class CrossingBuilder {
 public:
  CrossingBuilder(const JobConfig& config, const InputFiles& inputs,
                  const std::filesystem::path& digis_path);

  /// Builds crossing n: reads signal entry n, selects and reads the pileup
  /// events into their ranked folders, digitizes, writes the digis as
  /// entry n. Throws std::out_of_range when the signal file is exhausted.
  CrossingTimings build_crossing(std::uint64_t n);

  const Digis& digis() const;
  FolderRegistry& folders() { return folders_; }
  const FileChain& chain() const { return chain_; }

  std::uint64_t pileup_events_read() const { return pileup_events_read_; }
  std::uint64_t pileup_file_loads() const;
  IoStats pileup_io() const;

  /// Indices selected by the last build_crossing call.
  const std::vector<std::uint64_t>& last_selection() const { return last_selection_; }

  FileStats finish();

 private:
  RecordReader<Event>& pileup_reader_for(std::size_t file);

  JobConfig config_;
  FolderRegistry folders_;
  FileChain chain_;
  std::unique_ptr<RecordReader<Event>> signal_reader_;
  std::vector<std::unique_ptr<RecordReader<Event>>> pileup_readers_;
  std::unique_ptr<RecordWriter<Digis>> digis_writer_;
  std::uint64_t cursor_ = 0;
  std::uint64_t pileup_events_read_ = 0;
  std::vector<std::uint64_t> last_selection_;
  std::vector<const Event*> digitizer_inputs_;
};

// ---------------------------------------------------------------------------
// Cross-manager verification.

struct Mismatch {
  ManagerKind manager = ManagerKind::Keys;
  ContainerKind container = ContainerKind::ValueSeq;
  std::uint64_t entry = 0;
  std::string class_name;    // empty for record-level problems
  std::int64_t element = -1;  // -1: element count or whole-record problem
  std::string attribute;     // empty unless a single attribute differs
  std::string detail;
};

struct VerificationReport {
  std::uint64_t strategies_checked = 0;
  std::uint64_t entries_checked = 0;
  std::vector<Mismatch> mismatches;

  bool ok() const { return mismatches.empty(); }
};

struct StrategyFile {
  ManagerKind manager = ManagerKind::Keys;
  ContainerKind container = ContainerKind::ValueSeq;
  std::filesystem::path file;
};

/// Field-exact comparison of two events, appending any difference.
void compare_events(const Event& expected, const Event& actual, const StrategyFile& where,
                    std::uint64_t entry, std::vector<Mismatch>& out);

/// Reads `entries` from every strategy file and compares each event with
/// the matrix file's readback. Read or decode failures become mismatches.
VerificationReport verify_against_matrix(const std::filesystem::path& matrix_file,
                                         std::span<const StrategyFile> files,
                                         std::span<const std::uint64_t> entries,
                                         const StoreOptions& options);

/// Writes one pileup file per (manager, container) strategy from the same
/// generated events and verifies all twelve against the matrix readback.
VerificationReport verify_strategies(const JobConfig& config);

}  // namespace crossbench
