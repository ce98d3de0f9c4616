#include "crossbench/digitizer.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace crossbench {

namespace {

template <typename Id, typename Value>
struct Contribution {
  Id id;
  Value value;
  friend bool operator<(const Contribution& a, const Contribution& b) {
    return a.id != b.id ? a.id < b.id : a.value < b.value;
  }
};

}  // namespace

Digis digitize(std::span<const Event* const> events, float threshold, ContainerKind kind) {
  std::vector<Contribution<std::int32_t, float>> calo;
  std::vector<Contribution<std::int32_t, double>> track;
  for (const Event* e : events) {
    for_each_element(*e->calo_hits, [&](const CaloHit& h) { calo.push_back({h.cell_id, h.energy * h.weight}); });
    for_each_element(*e->track_hits, [&](const TrackHit& h) {
      track.push_back({static_cast<std::int32_t>(std::lround(h.detector_id)), h.energy_loss});
    });
  }
  // Sorting makes the summation order, hence the rounding, independent of
  // the input order.
  std::sort(calo.begin(), calo.end());
  std::sort(track.begin(), track.end());

  Digis out(kind);
  for (std::size_t i = 0; i < calo.size();) {
    const auto id = calo[i].id;
    double sum = 0;
    for (; i < calo.size() && calo[i].id == id; ++i) sum += calo[i].value;
    const auto amplitude = static_cast<float>(sum);
    if (amplitude > threshold) out.calo_digis->add({id, amplitude});
  }
  for (std::size_t i = 0; i < track.size();) {
    const auto id = track[i].id;
    double sum = 0;
    std::int32_t hits = 0;
    for (; i < track.size() && track[i].id == id; ++i, ++hits) sum += track[i].value;
    out.track_digis->add({id, hits, static_cast<float>(sum)});
  }
  return out;
}

Digis digitize(const Event& signal, std::span<const Event* const> pileups, float threshold, ContainerKind kind) {
  std::vector<const Event*> all;
  all.reserve(pileups.size() + 1);
  all.push_back(&signal);
  all.insert(all.end(), pileups.begin(), pileups.end());
  return digitize(std::span<const Event* const>(all), threshold, kind);
}

}  // namespace crossbench
