#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "crossbench/containers.hpp"
#include "crossbench/schema.hpp"

namespace crossbench {

// ---------------------------------------------------------------------------
// Input event classes. Raw sizes: 46, 34, 38, 20 and 56 bytes.

struct GenParticle {
  double energy = 0;  // GeV
  float px = 0, py = 0, pz = 0;
  float x = 0, y = 0, z = 0;  // mm
  float time = 0;             // ns
  float charge = 0;
  float weight = 0;
  std::int16_t pdg_code = 0;

  friend bool operator==(const GenParticle&, const GenParticle&) = default;
};

struct SimVertex {
  float x = 0, y = 0, z = 0, time = 0, energy_loss = 0, quality = 0;
  std::int16_t parent_index = 0, process_type = 0, region = 0, detector_id = 0, flags = 0;

  friend bool operator==(const SimVertex&, const SimVertex&) = default;
};

struct SimTrack {
  double px = 0, py = 0, pz = 0, energy = 0;
  float time = 0;
  std::int16_t pdg_code = 0;

  friend bool operator==(const SimTrack&, const SimTrack&) = default;
};

struct CaloHit {
  float energy = 0;  // GeV
  float time = 0;    // ns
  std::int32_t cell_id = 0;
  std::int32_t track_index = 0;
  float weight = 0;

  friend bool operator==(const CaloHit&, const CaloHit&) = default;
};

struct TrackHit {
  double tof = 0;
  double energy_loss = 0;
  float entry_x = 0, entry_y = 0, entry_z = 0;
  float exit_x = 0, exit_y = 0, exit_z = 0;
  float momentum = 0, theta = 0, phi = 0;
  float detector_id = 0;

  friend bool operator==(const TrackHit&, const TrackHit&) = default;
};

// Output classes of the digitizer.

struct CaloDigi {
  std::int32_t cell_id = 0;
  float amplitude = 0;

  friend bool operator==(const CaloDigi&, const CaloDigi&) = default;
};

struct TrackDigi {
  std::int32_t detector_id = 0;
  std::int32_t hit_count = 0;
  float charge = 0;

  friend bool operator==(const TrackDigi&, const TrackDigi&) = default;
};

template <>
struct ClassTraits<GenParticle> {
  static constexpr std::string_view name = "GenParticle";
  static constexpr auto fields = std::make_tuple(
      field("energy", &GenParticle::energy), field("px", &GenParticle::px),
      field("py", &GenParticle::py), field("pz", &GenParticle::pz), field("x", &GenParticle::x),
      field("y", &GenParticle::y), field("z", &GenParticle::z), field("time", &GenParticle::time),
      field("charge", &GenParticle::charge), field("weight", &GenParticle::weight),
      field("pdg_code", &GenParticle::pdg_code));
};

template <>
struct ClassTraits<SimVertex> {
  static constexpr std::string_view name = "SimVertex";
  static constexpr auto fields = std::make_tuple(
      field("x", &SimVertex::x), field("y", &SimVertex::y), field("z", &SimVertex::z),
      field("time", &SimVertex::time), field("energy_loss", &SimVertex::energy_loss),
      field("quality", &SimVertex::quality), field("parent_index", &SimVertex::parent_index),
      field("process_type", &SimVertex::process_type), field("region", &SimVertex::region),
      field("detector_id", &SimVertex::detector_id), field("flags", &SimVertex::flags));
};

template <>
struct ClassTraits<SimTrack> {
  static constexpr std::string_view name = "SimTrack";
  static constexpr auto fields = std::make_tuple(
      field("px", &SimTrack::px), field("py", &SimTrack::py), field("pz", &SimTrack::pz),
      field("energy", &SimTrack::energy), field("time", &SimTrack::time),
      field("pdg_code", &SimTrack::pdg_code));
};

template <>
struct ClassTraits<CaloHit> {
  static constexpr std::string_view name = "CaloHit";
  static constexpr auto fields =
      std::make_tuple(field("energy", &CaloHit::energy), field("time", &CaloHit::time),
                      field("cell_id", &CaloHit::cell_id),
                      field("track_index", &CaloHit::track_index), field("weight", &CaloHit::weight));
};

template <>
struct ClassTraits<TrackHit> {
  static constexpr std::string_view name = "TrackHit";
  static constexpr auto fields = std::make_tuple(
      field("tof", &TrackHit::tof), field("energy_loss", &TrackHit::energy_loss),
      field("entry_x", &TrackHit::entry_x), field("entry_y", &TrackHit::entry_y),
      field("entry_z", &TrackHit::entry_z), field("exit_x", &TrackHit::exit_x),
      field("exit_y", &TrackHit::exit_y), field("exit_z", &TrackHit::exit_z),
      field("momentum", &TrackHit::momentum), field("theta", &TrackHit::theta),
      field("phi", &TrackHit::phi), field("detector_id", &TrackHit::detector_id));
};

template <>
struct ClassTraits<CaloDigi> {
  static constexpr std::string_view name = "CaloDigi";
  static constexpr auto fields = std::make_tuple(field("cell_id", &CaloDigi::cell_id),
                                                 field("amplitude", &CaloDigi::amplitude));
};

template <>
struct ClassTraits<TrackDigi> {
  static constexpr std::string_view name = "TrackDigi";
  static constexpr auto fields =
      std::make_tuple(field("detector_id", &TrackDigi::detector_id),
                      field("hit_count", &TrackDigi::hit_count), field("charge", &TrackDigi::charge));
};

static_assert(raw_size_of<GenParticle>() == 46);
static_assert(raw_size_of<SimVertex>() == 34);
static_assert(raw_size_of<SimTrack>() == 38);
static_assert(raw_size_of<CaloHit>() == 20);
static_assert(raw_size_of<TrackHit>() == 56);

// ---------------------------------------------------------------------------
// Records: a fixed set of collections plus an id. Event and Digis both
// expose for_each_collection so the stores can treat them generically.

template <typename R>
concept Record = requires(R& r, const R& cr) {
  { r.id } -> std::convertible_to<std::uint64_t>;
  typename R::Classes;
  r.for_each_collection([](auto&) {});
  cr.for_each_collection([](const auto&) {});
};

/// One signal or minimum-bias event.
class Event {
 public:
  using Classes = std::tuple<GenParticle, SimVertex, SimTrack, CaloHit, TrackHit>;
  static constexpr std::string_view kRecordName = "Event";

  explicit Event(ContainerKind kind = ContainerKind::ValueSeq);

  Event(Event&&) noexcept = default;
  Event& operator=(Event&&) noexcept = default;

  /// Deep copy into another container discipline.
  Event clone(ContainerKind kind) const;
  Event clone() const { return clone(kind_); }

  ContainerKind container_kind() const { return kind_; }

  void clear();
  std::size_t element_count() const;

  template <typename F>
  void for_each_collection(F&& f) {
    f(*gen_particles);
    f(*sim_vertices);
    f(*sim_tracks);
    f(*calo_hits);
    f(*track_hits);
  }
  template <typename F>
  void for_each_collection(F&& f) const {
    f(std::as_const(*gen_particles));
    f(std::as_const(*sim_vertices));
    f(std::as_const(*sim_tracks));
    f(std::as_const(*calo_hits));
    f(std::as_const(*track_hits));
  }

  std::uint64_t id = 0;
  std::unique_ptr<Sequence<GenParticle>> gen_particles;
  std::unique_ptr<Sequence<SimVertex>> sim_vertices;
  std::unique_ptr<Sequence<SimTrack>> sim_tracks;
  std::unique_ptr<Sequence<CaloHit>> calo_hits;
  std::unique_ptr<Sequence<TrackHit>> track_hits;

 private:
  ContainerKind kind_;
};

/// Digitized crossing.
class Digis {
 public:
  using Classes = std::tuple<CaloDigi, TrackDigi>;
  static constexpr std::string_view kRecordName = "Digis";

  explicit Digis(ContainerKind kind = ContainerKind::ValueSeq);

  Digis(Digis&&) noexcept = default;
  Digis& operator=(Digis&&) noexcept = default;

  Digis clone(ContainerKind kind) const;
  ContainerKind container_kind() const { return kind_; }
  void clear();

  template <typename F>
  void for_each_collection(F&& f) {
    f(*calo_digis);
    f(*track_digis);
  }
  template <typename F>
  void for_each_collection(F&& f) const {
    f(std::as_const(*calo_digis));
    f(std::as_const(*track_digis));
  }

  std::uint64_t id = 0;
  std::unique_ptr<Sequence<CaloDigi>> calo_digis;
  std::unique_ptr<Sequence<TrackDigi>> track_digis;

 private:
  ContainerKind kind_;
};

/// Same id and field-exact identical collections, whatever the container kinds.
bool operator==(const Event& a, const Event& b);
bool operator==(const Digis& a, const Digis& b);

template <Record R>
constexpr std::size_t collection_count() {
  return std::tuple_size_v<typename R::Classes>;
}

template <Record R>
std::vector<ClassSchema> record_schemas() {
  return std::apply([](auto... tag) { return std::vector<ClassSchema>{schema_of<decltype(tag)>()...}; },
                    typename R::Classes{});
}

// ---------------------------------------------------------------------------
// Size model.

/// Mean per-class multiplicities of a minimum-bias event, in Event class
/// order (GenParticle, SimVertex, SimTrack, CaloHit, TrackHit).
using Multiplicities = std::array<double, 5>;
inline constexpr Multiplicities kMeanMultiplicities = {351, 584, 169, 3282, 1871};

enum class SizeMode { Raw, AllDouble };

/// Σ count × per-element size over the five input classes.
double expected_event_bytes(const Multiplicities& counts, SizeMode mode);

}  // namespace crossbench
