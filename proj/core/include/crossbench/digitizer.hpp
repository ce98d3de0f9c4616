#pragma once

#include <span>

#include "crossbench/event_model.hpp"

namespace crossbench {

inline constexpr float kDefaultDigiThreshold = 0.05f;  // GeV

/// Stand-in for the front-end electronics: groups every calo hit of every
/// input event by cell (amplitude = Σ energy × weight, kept when above the
/// threshold) and every track hit by detector (hit count, Σ energy loss).
/// Both outputs are in ascending id order. Sums are taken over sorted
/// contributions, so the result does not depend on event or hit order.
Digis digitize(std::span<const Event* const> events, float threshold = kDefaultDigiThreshold,
               ContainerKind kind = ContainerKind::ValueSeq);

/// Signal plus pileup convenience form.
Digis digitize(const Event& signal, std::span<const Event* const> pileups,
               float threshold = kDefaultDigiThreshold, ContainerKind kind = ContainerKind::ValueSeq);

}  // namespace crossbench
