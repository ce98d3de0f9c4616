#pragma once

#include <cstdint>

#include "crossbench/containers.hpp"
#include "crossbench/event_model.hpp"

namespace crossbench {

/// Synthetic minimum-bias / signal event.
///
/// Per-class counts are Poisson around kMeanMultiplicities / reduction.
/// Every value depends only on (seed, event_id, class, element index,
/// attribute). Float attributes are rounded to three significant digits
/// and integer ids come from small ranges correlated with the element
/// index, which gives deflate something to work with in columnar layouts.
///
/// Throws std::invalid_argument when reduction is 0.
Event generate_event(std::uint64_t seed, std::uint64_t event_id, std::uint32_t reduction,
                     ContainerKind kind = ContainerKind::ValueSeq);

/// Rounds to three significant decimal digits, computed in single precision.
float round_3sig(double v);

}  // namespace crossbench
