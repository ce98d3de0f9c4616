#include "crossbench/pipeline.hpp"

#include <ctime>
#include <stdexcept>
#include <string>

#include "crossbench/generator.hpp"

namespace crossbench {

namespace {

using Clock = std::chrono::steady_clock;

constexpr std::uint64_t kSignalStream = 0x5349474eULL;
constexpr std::uint64_t kPileupStream = 0x4d494e42ULL;

double cpu_seconds() { return static_cast<double>(std::clock()) / CLOCKS_PER_SEC; }

std::string file_name(std::string_view stem, ManagerKind kind) {
  return std::string(stem) + "." + std::string(store_extension(kind));
}

std::string pileup_name(std::size_t i, ManagerKind kind) {
  std::string stem = std::to_string(i);
  stem.insert(0, stem.size() < 3 ? 3 - stem.size() : 0, '0');
  return file_name("minbias_" + stem, kind);
}

FileStats write_events(const std::filesystem::path& path, const StoreOptions& options, std::uint64_t seed,
                       std::uint32_t count, std::uint32_t reduction, ContainerKind kind, double* write_seconds) {
  auto writer = make_writer<Event>(path, options);
  Clock::duration spent{};
  for (std::uint32_t i = 0; i < count; ++i) {
    const Event e = generate_event(seed, i, reduction, kind);
    const auto t0 = Clock::now();
    writer->write(e);
    spent += Clock::now() - t0;
  }
  const auto t0 = Clock::now();
  FileStats stats = writer->finalize();
  spent += Clock::now() - t0;
  if (write_seconds != nullptr) *write_seconds = std::chrono::duration<double>(spent).count();
  return stats;
}

template <typename T>
void compare_sequences(const Sequence<T>& expected, const Sequence<T>& actual, const StrategyFile& where,
                       std::uint64_t entry, std::vector<Mismatch>& out) {
  const std::string cls(ClassTraits<T>::name);
  if (expected.size() != actual.size()) {
    out.push_back({where.manager, where.container, entry, cls, -1, "",
                   "element count " + std::to_string(actual.size()) + ", expected " + std::to_string(expected.size())});
    return;
  }
  for (std::size_t i = 0; i < expected.size(); ++i) {
    const int attr = first_difference(expected.get(i), actual.get(i));
    if (attr < 0) continue;
    const auto schema = schema_of<T>();
    out.push_back({where.manager, where.container, entry, cls, static_cast<std::int64_t>(i),
                   schema.attributes[static_cast<std::size_t>(attr)].name, "value differs"});
  }
}

}  // namespace

JobConfig JobConfig::full_scale() {
  JobConfig c;
  c.reduction = 1;
  c.crossings = 500;
  c.pileup_files = 100;
  c.events_per_file = 500;
  return c;
}

StoreOptions JobConfig::store_options(std::string folder_name) const {
  StoreOptions o;
  o.manager = manager;
  o.compression_level = compression;
  o.split_level = split;
  o.basket_size = basket;
  o.folder_name = std::move(folder_name);
  return o;
}

void JobConfig::validate() const {
  crossbench::validate(store_options("check"));
  if (reduction == 0) throw std::invalid_argument("reduction factor must be at least 1");
  if (burst == 0) throw std::invalid_argument("burst must be positive");
  if (pileup_files == 0 || events_per_file == 0) throw std::invalid_argument("pileup chain must not be empty");
  if (pileup > kPileupPerCrossing) {
    throw std::invalid_argument("pileup multiplicity " + std::to_string(pileup) + " exceeds the " +
                                std::to_string(kPileupPerCrossing) + " minbias folders");
  }
  if (signal_event_count() < crossings) throw std::invalid_argument("fewer signal events than crossings");
}

std::string_view store_extension(ManagerKind kind) {
  switch (kind) {
    case ManagerKind::Keys:
      return "rtbk";
    case ManagerKind::Matrix:
      return "rtbm";
    case ManagerKind::Tree:
      return "rtbt";
  }
  return "bin";
}

// ---------------------------------------------------------------------------

FolderRegistry::FolderRegistry(ContainerKind kind, std::uint32_t minbias_slots) : signal_(kind), digis_(kind) {
  minbias_.reserve(minbias_slots);
  for (std::uint32_t i = 0; i < minbias_slots; ++i) minbias_.emplace_back(kind);
}

std::string FolderRegistry::minbias_name(std::size_t slot) { return "crossing/minbias" + std::to_string(slot); }

std::vector<std::string> FolderRegistry::names() const {
  std::vector<std::string> out;
  out.reserve(minbias_.size() + 2);
  out.emplace_back("crossing/signal");
  for (std::size_t i = 0; i < minbias_.size(); ++i) out.push_back(minbias_name(i));
  out.emplace_back("crossing/digis");
  return out;
}

Event& FolderRegistry::event(std::string_view name) {
  if (name == "crossing/signal") return signal_;
  constexpr std::string_view prefix = "crossing/minbias";
  if (name.starts_with(prefix) && name.size() > prefix.size()) {
    const auto digits = name.substr(prefix.size());
    std::size_t slot = 0;
    for (char ch : digits) {
      if (ch < '0' || ch > '9') throw std::out_of_range("no folder named '" + std::string(name) + "'");
      slot = slot * 10 + static_cast<std::size_t>(ch - '0');
    }
    if (digits.size() > 1 && digits.front() == '0') throw std::out_of_range("no folder named '" + std::string(name) + "'");
    if (slot < minbias_.size()) return minbias_[slot];
  }
  throw std::out_of_range("no event folder named '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------

InputFiles prepare_inputs(const JobConfig& config) {
  config.validate();
  std::filesystem::create_directories(config.work_dir);
  InputFiles in;

  in.signal = config.work_dir / file_name("signal", config.manager);
  in.signal_stats = write_events(in.signal, config.store_options("signal"), mix_seed(config.seed, kSignalStream),
                                 config.signal_event_count(), config.reduction, config.container, nullptr);

  const StoreOptions pileup_options = config.store_options("minbias");
  for (std::uint32_t f = 0; f < config.pileup_files; ++f) {
    const auto path = config.work_dir / pileup_name(f, config.manager);
    if (f == 0) {
      in.pileup_stats = write_events(path, pileup_options, mix_seed(config.seed, kPileupStream), config.events_per_file,
                                     config.reduction, config.container, &in.pileup_write_seconds);
    } else if (config.distinct_pileup_files) {
      write_events(path, pileup_options, mix_seed(config.seed, kPileupStream + f), config.events_per_file,
                   config.reduction, config.container, nullptr);
    } else {
      std::filesystem::copy_file(in.pileup.front(), path, std::filesystem::copy_options::overwrite_existing);
    }
    in.pileup.push_back(path);
  }
  return in;
}

// ---------------------------------------------------------------------------

CrossingBuilder::CrossingBuilder(const JobConfig& config, const InputFiles& inputs,
                                 const std::filesystem::path& digis_path)
    : config_(config), folders_(config.container) {
  config_.validate();
  std::vector<FileChain::Member> members;
  for (const auto& p : inputs.pileup) members.push_back({p, config_.events_per_file});
  chain_ = FileChain(std::move(members));

  signal_reader_ = make_reader<Event>(config_.store_options("signal"));
  signal_reader_->connect(folders_.signal(), inputs.signal);

  const std::size_t readers = config_.manager_per_file ? inputs.pileup.size() : 1;
  for (std::size_t i = 0; i < readers; ++i) pileup_readers_.push_back(make_reader<Event>(config_.store_options("minbias")));

  digis_writer_ = make_writer<Digis>(digis_path, config_.store_options("digis"));
  digitizer_inputs_.reserve(config_.pileup + 1);
}

RecordReader<Event>& CrossingBuilder::pileup_reader_for(std::size_t file) {
  return *pileup_readers_[config_.manager_per_file ? file : 0];
}

CrossingTimings CrossingBuilder::build_crossing(std::uint64_t n) {
  if (n >= signal_reader_->entry_count()) {
    throw std::out_of_range("signal events exhausted at crossing " + std::to_string(n));
  }
  CrossingTimings t;
  const auto start = Clock::now();
  const double cpu_start = cpu_seconds();

  signal_reader_->read(n);
  const auto signal_done = Clock::now();

  last_selection_.clear();
  if (config_.pileup > 0) {
    const SelectorParams params{config_.burst, config_.jump, config_.seed};
    Selection sel = next_indices(chain_, params, cursor_, config_.pileup);
    cursor_ = sel.next_cursor;
    t.file_switches = sel.file_switches;
    const auto ranks = assign_ranks(mix_seed(config_.effective_rank_seed(), n), config_.pileup);
    for (std::size_t i = 0; i < sel.entries.size(); ++i) {
      const auto loc = chain_.locate(sel.entries[i]);
      auto& reader = pileup_reader_for(loc.file);
      t.connect += reader.connect(folders_.minbias(ranks[i]), chain_.members()[loc.file].path);
      ++t.connects;
      reader.read(loc.entry);
    }
    pileup_events_read_ += sel.entries.size();
    last_selection_ = std::move(sel.entries);
  }
  const auto pileup_done = Clock::now();
  t.read_cpu_seconds = cpu_seconds() - cpu_start;

  digitizer_inputs_.clear();
  digitizer_inputs_.push_back(&folders_.signal());
  for (std::uint32_t i = 0; i < config_.pileup; ++i) digitizer_inputs_.push_back(&folders_.minbias(i));
  folders_.digis() = digitize(std::span<const Event* const>(digitizer_inputs_), config_.digi_threshold, config_.container);
  folders_.digis().id = n;
  const auto digitize_done = Clock::now();

  digis_writer_->write(folders_.digis());
  const auto write_done = Clock::now();

  t.signal_read = signal_done - start;
  t.pileup_read = pileup_done - signal_done;
  t.digitize = digitize_done - pileup_done;
  t.write = write_done - digitize_done;
  t.total = write_done - start;
  return t;
}

const Digis& CrossingBuilder::digis() const { return folders_.digis(); }

std::uint64_t CrossingBuilder::pileup_file_loads() const {
  std::uint64_t n = 0;
  for (const auto& r : pileup_readers_) n += r->file_loads();
  return n;
}

IoStats CrossingBuilder::pileup_io() const {
  IoStats s;
  for (const auto& r : pileup_readers_) s += r->stats();
  return s;
}

FileStats CrossingBuilder::finish() { return digis_writer_->finalize(); }

// ---------------------------------------------------------------------------

void compare_events(const Event& expected, const Event& actual, const StrategyFile& where, std::uint64_t entry,
                    std::vector<Mismatch>& out) {
  if (expected.id != actual.id) {
    out.push_back({where.manager, where.container, entry, "", -1, "",
                   "record id " + std::to_string(actual.id) + ", expected " + std::to_string(expected.id)});
  }
  compare_sequences(*expected.gen_particles, *actual.gen_particles, where, entry, out);
  compare_sequences(*expected.sim_vertices, *actual.sim_vertices, where, entry, out);
  compare_sequences(*expected.sim_tracks, *actual.sim_tracks, where, entry, out);
  compare_sequences(*expected.calo_hits, *actual.calo_hits, where, entry, out);
  compare_sequences(*expected.track_hits, *actual.track_hits, where, entry, out);
}

VerificationReport verify_against_matrix(const std::filesystem::path& matrix_file, std::span<const StrategyFile> files,
                                         std::span<const std::uint64_t> entries, const StoreOptions& options) {
  VerificationReport report;
  if (entries.empty()) return report;

  StoreOptions oracle_options = options;
  oracle_options.manager = ManagerKind::Matrix;
  const StrategyFile oracle_where{ManagerKind::Matrix, ContainerKind::ValueSeq, matrix_file};
  std::vector<std::optional<Event>> oracle(entries.size());
  {
    auto reader = make_reader<Event>(oracle_options);
    Event folder;
    try {
      reader->connect(folder, matrix_file);
      for (std::size_t i = 0; i < entries.size(); ++i) {
        try {
          reader->read(entries[i]);
          oracle[i] = folder.clone();
        } catch (const std::exception& e) {
          report.mismatches.push_back({ManagerKind::Matrix, oracle_where.container, entries[i], "", -1, "", e.what()});
        }
      }
    } catch (const std::exception& e) {
      report.mismatches.push_back({ManagerKind::Matrix, oracle_where.container, 0, "", -1, "", e.what()});
      return report;
    }
  }

  for (const auto& f : files) {
    ++report.strategies_checked;
    StoreOptions o = options;
    o.manager = f.manager;
    auto reader = make_reader<Event>(o);
    Event folder(f.container);
    try {
      reader->connect(folder, f.file);
    } catch (const std::exception& e) {
      report.mismatches.push_back({f.manager, f.container, 0, "", -1, "", e.what()});
      continue;
    }
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (!oracle[i]) continue;
      ++report.entries_checked;
      try {
        reader->read(entries[i]);
        compare_events(*oracle[i], folder, f, entries[i], report.mismatches);
      } catch (const std::exception& e) {
        report.mismatches.push_back({f.manager, f.container, entries[i], "", -1, "", e.what()});
      }
    }
  }
  return report;
}

VerificationReport verify_strategies(const JobConfig& config) {
  config.validate();
  const auto dir = config.work_dir / "verify";
  std::filesystem::create_directories(dir);

  std::vector<Event> originals;
  originals.reserve(config.events_per_file);
  for (std::uint32_t i = 0; i < config.events_per_file; ++i) {
    originals.push_back(generate_event(mix_seed(config.seed, kPileupStream), i, config.reduction));
  }
  std::vector<std::uint64_t> entries(originals.size());
  for (std::size_t i = 0; i < entries.size(); ++i) entries[i] = i;

  VerificationReport report;
  for (auto container : kAllContainerKinds) {
    std::vector<StrategyFile> files;
    std::filesystem::path matrix_file;
    for (auto manager : kAllManagerKinds) {
      JobConfig cell = config;
      cell.manager = manager;
      cell.container = container;
      const auto path = dir / file_name(std::string(to_string(manager)) + "_" + std::string(short_name(container)), manager);
      auto writer = make_writer<Event>(path, cell.store_options("minbias"));
      for (const auto& e : originals) writer->write(e.clone(container));
      writer->finalize();
      files.push_back({manager, container, path});
      if (manager == ManagerKind::Matrix) matrix_file = path;
    }

    // The matrix readback is the oracle; check it against the generated
    // events first, then every strategy against it.
    {
      StoreOptions o = config.store_options("minbias");
      o.manager = ManagerKind::Matrix;
      auto reader = make_reader<Event>(o);
      Event folder(container);
      const StrategyFile where{ManagerKind::Matrix, container, matrix_file};
      reader->connect(folder, matrix_file);
      for (std::size_t i = 0; i < originals.size(); ++i) {
        try {
          reader->read(i);
          compare_events(originals[i], folder, where, i, report.mismatches);
        } catch (const std::exception& e) {
          report.mismatches.push_back({ManagerKind::Matrix, container, i, "", -1, "", e.what()});
        }
      }
    }

    const auto part = verify_against_matrix(matrix_file, files, entries, config.store_options("minbias"));
    report.strategies_checked += part.strategies_checked;
    report.entries_checked += part.entries_checked;
    report.mismatches.insert(report.mismatches.end(), part.mismatches.begin(), part.mismatches.end());
  }
  return report;
}

}  // namespace crossbench
