#pragma once

#include "psearch/engine.hpp"
#include "psearch/observer.hpp"

#include <cstdint>

namespace psearch {

struct QuicksortConfig {
    RunObserver* observer = nullptr;
};

/// The level-synchronous randomized-quicksort baseline: all comparisons
/// against the pivots of one recursion level are independent; each level is
/// resolved by repeatedly picking the plain median of the pending roots
/// (free when the interval already decides it) and sweeping the implied
/// rest. Same output contract and determinism rule as run_boxsort.
RunResult run_quicksort(const ProblemDefinition& problem, std::uint64_t seed,
                        const QuicksortConfig& config = {});

}  // namespace psearch
