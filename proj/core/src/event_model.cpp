#include "crossbench/event_model.hpp"

#include <stdexcept>
#include <string>

namespace crossbench {

std::string_view to_string(ContainerKind kind) {
  switch (kind) {
    case ContainerKind::ValueSeq:
      return "ValueSeq";
    case ContainerKind::DoublingArray:
      return "DoublingArray";
    case ContainerKind::IndirectArray:
      return "IndirectArray";
    case ContainerKind::SlotArray:
      return "SlotArray";
  }
  return "?";
}

std::string_view short_name(ContainerKind kind) {
  switch (kind) {
    case ContainerKind::ValueSeq:
      return "stl";
    case ContainerKind::DoublingArray:
      return "c";
    case ContainerKind::IndirectArray:
      return "obj";
    case ContainerKind::SlotArray:
      return "clones";
  }
  return "?";
}

ContainerKind parse_container_kind(std::string_view text) {
  for (auto k : kAllContainerKinds) {
    if (text == short_name(k) || text == to_string(k)) return k;
  }
  throw std::invalid_argument("unknown container kind '" + std::string(text) +
                              "' (expected stl, c, obj or clones)");
}

namespace {

template <typename T>
void copy_into(const Sequence<T>& from, Sequence<T>& to) {
  to.clear();
  for_each_element(from, [&](const T& e) { to.add(e); });
}

}  // namespace

Event::Event(ContainerKind kind)
    : gen_particles(make_sequence<GenParticle>(kind)),
      sim_vertices(make_sequence<SimVertex>(kind)),
      sim_tracks(make_sequence<SimTrack>(kind)),
      calo_hits(make_sequence<CaloHit>(kind)),
      track_hits(make_sequence<TrackHit>(kind)),
      kind_(kind) {}

Event Event::clone(ContainerKind kind) const {
  Event copy(kind);
  copy.id = id;
  copy_into(*gen_particles, *copy.gen_particles);
  copy_into(*sim_vertices, *copy.sim_vertices);
  copy_into(*sim_tracks, *copy.sim_tracks);
  copy_into(*calo_hits, *copy.calo_hits);
  copy_into(*track_hits, *copy.track_hits);
  return copy;
}

void Event::clear() {
  for_each_collection([](auto& seq) { seq.clear(); });
}

std::size_t Event::element_count() const {
  std::size_t n = 0;
  for_each_collection([&](const auto& seq) { n += seq.size(); });
  return n;
}

Digis::Digis(ContainerKind kind)
    : calo_digis(make_sequence<CaloDigi>(kind)), track_digis(make_sequence<TrackDigi>(kind)), kind_(kind) {}

Digis Digis::clone(ContainerKind kind) const {
  Digis copy(kind);
  copy.id = id;
  copy_into(*calo_digis, *copy.calo_digis);
  copy_into(*track_digis, *copy.track_digis);
  return copy;
}

void Digis::clear() {
  calo_digis->clear();
  track_digis->clear();
}

bool operator==(const Event& a, const Event& b) {
  return a.id == b.id && same_elements(*a.gen_particles, *b.gen_particles) &&
         same_elements(*a.sim_vertices, *b.sim_vertices) && same_elements(*a.sim_tracks, *b.sim_tracks) &&
         same_elements(*a.calo_hits, *b.calo_hits) && same_elements(*a.track_hits, *b.track_hits);
}

bool operator==(const Digis& a, const Digis& b) {
  return a.id == b.id && same_elements(*a.calo_digis, *b.calo_digis) &&
         same_elements(*a.track_digis, *b.track_digis);
}

double expected_event_bytes(const Multiplicities& counts, SizeMode mode) {
  const auto schemas = record_schemas<Event>();
  double total = 0;
  for (std::size_t c = 0; c < counts.size(); ++c) {
    if (counts[c] < 0) throw std::invalid_argument("negative multiplicity");
    const auto per = mode == SizeMode::Raw ? schema_raw_size(schemas[c]) : schema_all_double_size(schemas[c]);
    total += counts[c] * static_cast<double>(per);
  }
  return total;
}

}  // namespace crossbench
