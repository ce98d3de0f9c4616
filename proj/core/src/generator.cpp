#include "crossbench/generator.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "crossbench/selection.hpp"

namespace crossbench {

float round_3sig(double v) {
  if (v == 0 || !std::isfinite(v)) return static_cast<float>(v);
  const double exponent = std::floor(std::log10(std::fabs(v)));
  const double scale = std::pow(10.0, 2.0 - exponent);
  return static_cast<float>(std::round(v * scale) / scale);
}

namespace {

enum ClassTag : std::uint64_t { kGen = 1, kVertex = 2, kTrack = 3, kCalo = 4, kHit = 5 };

/// Counter-based value source: every draw is a hash of the full key, so a
/// value never depends on how many draws came before it.
class ElementDraws {
 public:
  ElementDraws(std::uint64_t seed, std::uint64_t event_id, ClassTag cls, std::uint64_t index)
      : class_key_(mix_seed(mix_seed(seed, event_id), cls)), key_(mix_seed(class_key_, index)) {}

  /// Draws shared by a group of elements of the same class and event.
  ElementDraws group(std::uint64_t g) const { return ElementDraws(class_key_, ~g); }

  /// Uniform on [0, 1) for attribute slot `attr`.
  double uniform(std::uint64_t attr) const {
    return static_cast<double>(mix_seed(key_, attr) >> 11) * 0x1.0p-53;
  }
  double exponential(std::uint64_t attr, double mean) const { return -mean * std::log1p(-uniform(attr)); }
  double gaussian(std::uint64_t attr, double sigma) const {
    const double u1 = uniform(attr * 2 + 100) + 0x1.0p-54;
    const double u2 = uniform(attr * 2 + 101);
    return sigma * std::sqrt(-2.0 * std::log(u1)) * std::cos(2 * std::numbers::pi * u2);
  }
  std::int64_t pick(std::uint64_t attr, std::int64_t n) const {
    return static_cast<std::int64_t>(uniform(attr) * static_cast<double>(n));
  }

 private:
  ElementDraws(std::uint64_t class_key, std::uint64_t index)
      : class_key_(class_key), key_(mix_seed(class_key, index)) {}

  std::uint64_t class_key_;
  std::uint64_t key_;
};

constexpr std::int16_t kPdgCodes[] = {211, -211, 22, 22, 22, 111, 321, -321, 2212, 11, -11, 13};

std::int16_t pdg_code(const ElementDraws& d, std::uint64_t attr) {
  return kPdgCodes[d.pick(attr, static_cast<std::int64_t>(std::size(kPdgCodes)))];
}

float charge_of(std::int16_t pdg) {
  switch (pdg) {
    case 211:
    case 321:
    case 2212:
    case -11:
      return 1.0f;
    case -211:
    case -321:
    case 11:
    case 13:
      return -1.0f;
    default:
      return 0.0f;
  }
}

GenParticle make_gen_particle(const ElementDraws& d, std::size_t i) {
  GenParticle p;
  const double pt = d.exponential(0, 0.6) + 0.05;
  const double phi = 2 * std::numbers::pi * d.uniform(1);
  const double eta = 5.0 * d.uniform(2) - 2.5;
  p.px = round_3sig(pt * std::cos(phi));
  p.py = round_3sig(pt * std::sin(phi));
  p.pz = round_3sig(pt * std::sinh(eta));
  p.energy = round_3sig(pt * std::cosh(eta));
  // Particles come from a handful of vertices close to the beam spot.
  const ElementDraws vd = d.group(i / 16);
  p.x = round_3sig(vd.gaussian(3, 0.01));
  p.y = round_3sig(vd.gaussian(4, 0.01));
  p.z = round_3sig(vd.gaussian(5, 50.0));
  p.time = round_3sig(p.z / 300.0);
  p.pdg_code = pdg_code(d, 6);
  p.charge = charge_of(p.pdg_code);
  p.weight = 1.0f;
  return p;
}

SimVertex make_sim_vertex(const ElementDraws& d, std::size_t i) {
  // Vertices sharing a parent sit at the same interaction point.
  const ElementDraws point = d.group(i / 4);
  SimVertex v;
  const double r = point.exponential(0, 200.0);
  const double phi = 2 * std::numbers::pi * point.uniform(1);
  v.x = round_3sig(r * std::cos(phi));
  v.y = round_3sig(r * std::sin(phi));
  v.z = round_3sig(point.gaussian(2, 800.0));
  v.time = round_3sig(std::hypot(r, static_cast<double>(v.z)) / 300.0);
  v.energy_loss = point.uniform(3) < 0.5 ? 0.0f : round_3sig(point.exponential(4, 0.002));
  v.quality = d.uniform(5) < 0.8 ? 1.0f : round_3sig(d.uniform(6));
  v.parent_index = static_cast<std::int16_t>(i / 4);
  v.process_type = static_cast<std::int16_t>(d.pick(7, 8));
  v.region = static_cast<std::int16_t>(d.pick(8, 4));
  v.detector_id = static_cast<std::int16_t>(1 + d.pick(9, 20));
  v.flags = static_cast<std::int16_t>(d.uniform(10) < 0.9 ? 0 : 1);
  return v;
}

SimTrack make_sim_track(const ElementDraws& d, std::size_t) {
  SimTrack t;
  const double pt = d.exponential(0, 0.8) + 0.1;
  const double phi = 2 * std::numbers::pi * d.uniform(1);
  const double eta = 5.0 * d.uniform(2) - 2.5;
  t.px = round_3sig(pt * std::cos(phi));
  t.py = round_3sig(pt * std::sin(phi));
  t.pz = round_3sig(pt * std::sinh(eta));
  t.energy = round_3sig(pt * std::cosh(eta));
  t.time = d.uniform(3) < 0.7 ? 0.0f : round_3sig(d.exponential(4, 2.0));
  t.pdg_code = pdg_code(d, 5);
  return t;
}

CaloHit make_calo_hit(const ElementDraws& d, std::size_t i) {
  // Hits come in showers of 20 neighbouring cells; energies are ADC counts
  // of 1 MeV and times are multiples of the 0.5 ns sampling step.
  const ElementDraws shower = d.group(i / 20);
  CaloHit h;
  h.energy = round_3sig(0.001 * (1 + std::floor(d.exponential(0, 8.0))));
  h.time = round_3sig(20.0 + 0.5 * std::floor(shower.exponential(1, 6.0)));
  // A shower covers a 5 x 4 block of cells around its seed tower.
  const std::size_t k = i % 20;
  h.cell_id = static_cast<std::int32_t>(1000 + 72 * shower.pick(2, 100) + 360 * (k / 5) + (k % 5));
  h.track_index = static_cast<std::int32_t>(i / 20);
  h.weight = shower.uniform(4) < 0.9 ? 1.0f : 0.5f;
  return h;
}

TrackHit make_track_hit(const ElementDraws& d, std::size_t i) {
  // Consecutive hits belong to one track crossing twelve barrel layers.
  constexpr std::size_t kLayers = 12;
  const ElementDraws track = d.group(i / kLayers);
  const double layer = static_cast<double>(i % kLayers);
  const double pt = track.exponential(0, 1.0) + 0.2;
  const double phi0 = 2 * std::numbers::pi * track.uniform(1);
  const double theta = std::acos(1.6 * track.uniform(2) - 0.8);
  const double charge = track.uniform(3) < 0.5 ? -1.0 : 1.0;

  // Entry and exit points are in the module frame of a strip sensor: x at
  // the 0.5 mm strip pitch, y at the 10 mm readout segment, z on the faces
  // of the 0.3 mm thick sensor.
  const double radius = 40.0 + 90.0 * layer;
  const double strip = static_cast<double>(d.pick(6, 120));
  const double segment = static_cast<double>(track.pick(7, 10));
  const double drift = std::round(charge * 0.1 / pt);
  TrackHit h;
  h.entry_x = static_cast<float>(0.5 * (strip - 60.0));
  h.entry_y = static_cast<float>(10.0 * (segment - 5.0));
  h.entry_z = -0.15f;
  h.exit_x = static_cast<float>(0.5 * (strip + drift - 60.0));
  h.exit_y = h.entry_y;
  h.exit_z = 0.15f;
  h.momentum = round_3sig(pt / std::sin(theta));
  h.theta = round_3sig(theta);
  h.phi = round_3sig(phi0);
  h.tof = std::round(10.0 * radius / std::sin(theta) / 300.0) / 10.0;
  h.energy_loss = round_3sig(1e-5 * (20 + std::floor(d.exponential(5, 4.0))));
  const double module = std::floor(std::fmod(phi0 + 4 * std::numbers::pi, 2 * std::numbers::pi) / (2 * std::numbers::pi) * 64);
  h.detector_id = static_cast<float>(1000 * (i % kLayers) + module);
  return h;
}

template <typename T, typename Make>
void fill(Sequence<T>& seq, std::mt19937_64& counts, double mean, std::uint64_t seed,
          std::uint64_t event_id, ClassTag tag, Make make) {
  std::poisson_distribution<std::uint32_t> dist(mean);
  const std::uint32_t n = mean > 0 ? dist(counts) : 0;
  seq.clear();
  for (std::uint32_t i = 0; i < n; ++i) seq.add(make(ElementDraws(seed, event_id, tag, i), i));
}

}  // namespace

Event generate_event(std::uint64_t seed, std::uint64_t event_id, std::uint32_t reduction, ContainerKind kind) {
  if (reduction == 0) throw std::invalid_argument("reduction factor must be at least 1");
  Event e(kind);
  e.id = event_id;
  std::mt19937_64 counts(mix_seed(mix_seed(seed, event_id), 0x4d554c54ULL));
  const double r = reduction;
  const auto& m = kMeanMultiplicities;
  fill(*e.gen_particles, counts, m[0] / r, seed, event_id, kGen, make_gen_particle);
  fill(*e.sim_vertices, counts, m[1] / r, seed, event_id, kVertex, make_sim_vertex);
  fill(*e.sim_tracks, counts, m[2] / r, seed, event_id, kTrack, make_sim_track);
  fill(*e.calo_hits, counts, m[3] / r, seed, event_id, kCalo, make_calo_hit);
  fill(*e.track_hits, counts, m[4] / r, seed, event_id, kHit, make_track_hit);
  return e;
}

}  // namespace crossbench
