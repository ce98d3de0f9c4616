#pragma once

#include <atomic>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <ostream>
#include <string>
#include <unistd.h>

#include "crossbench/event_model.hpp"
#include "crossbench/managers.hpp"

namespace crossbench::testing {

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("crossbench-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_file(const std::filesystem::path& p, const std::string& bytes) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

/// Small event with hand-picked values; `id` shifts every value so events
/// differ from each other.
inline Event hand_event(std::uint64_t id, ContainerKind kind = ContainerKind::ValueSeq) {
  Event e(kind);
  e.id = id;
  const auto s = static_cast<float>(id);
  for (int i = 0; i < 3; ++i) {
    GenParticle p;
    p.energy = 10.5 + id + i;
    p.px = 1.25f + s;
    p.py = -2.5f;
    p.pz = 0.125f * static_cast<float>(i);
    p.x = 0.01f;
    p.y = -0.02f;
    p.z = 12.0f + s;
    p.time = 0.04f;
    p.charge = i % 2 == 0 ? 1.0f : -1.0f;
    p.weight = 1.0f;
    p.pdg_code = static_cast<std::int16_t>(211 - i);
    e.gen_particles->add(p);
  }
  for (int i = 0; i < 2; ++i) {
    SimVertex v;
    v.x = 1.5f * static_cast<float>(i);
    v.y = 2.5f;
    v.z = -3.5f - s;
    v.time = 0.5f;
    v.energy_loss = 0.001f;
    v.quality = 1.0f;
    v.parent_index = static_cast<std::int16_t>(i);
    v.process_type = 3;
    v.region = 1;
    v.detector_id = static_cast<std::int16_t>(7 + id);
    v.flags = 0;
    e.sim_vertices->add(v);
  }
  SimTrack t;
  t.px = 0.75;
  t.py = -0.25 * static_cast<double>(id);
  t.pz = 4.0;
  t.energy = 4.125;
  t.time = 0.0f;
  t.pdg_code = -13;
  e.sim_tracks->add(t);
  for (int i = 0; i < 4; ++i) {
    CaloHit h;
    h.energy = 0.02f * static_cast<float>(i + 1);
    h.time = 20.5f;
    h.cell_id = 1000 + i + static_cast<std::int32_t>(id);
    h.track_index = 0;
    h.weight = i == 3 ? 0.5f : 1.0f;
    e.calo_hits->add(h);
  }
  for (int i = 0; i < 2; ++i) {
    TrackHit h;
    h.tof = 0.3 + 0.1 * i;
    h.energy_loss = 0.00024;
    h.entry_x = -1.5f;
    h.entry_y = 10.0f;
    h.entry_z = -0.15f;
    h.exit_x = -1.0f;
    h.exit_y = 10.0f;
    h.exit_z = 0.15f;
    h.momentum = 2.5f + s;
    h.theta = 1.2f;
    h.phi = 0.7f;
    h.detector_id = 1000.0f * static_cast<float>(i) + 12.0f;
    e.track_hits->add(h);
  }
  return e;
}

}  // namespace crossbench::testing

namespace crossbench {

// Readable parameter names in test listings.
inline void PrintTo(ManagerKind k, std::ostream* os) { *os << to_string(k); }
inline void PrintTo(ContainerKind k, std::ostream* os) { *os << short_name(k); }
inline void PrintTo(TreeLayout l, std::ostream* os) { *os << (l == TreeLayout::Matrix ? "matrix" : "tree"); }

}  // namespace crossbench
