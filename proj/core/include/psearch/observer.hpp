#pragma once

#include "psearch/engine.hpp"

#include <cstddef>
#include <cstdint>

namespace psearch {

/// Instrumentation hooks fired by the drivers. All default to no-ops; a run
/// without an observer skips the (comparatively expensive) weight summaries.
class RunObserver {
  public:
    virtual ~RunObserver() = default;

    /// boxsort: a pivotal comparison entered the dependence network.
    virtual void on_activation(std::uint64_t /*turn*/, double /*weight*/,
                               std::uint32_t /*virtual_depth*/) {}

    /// boxsort: one resolved comparison handed a batch of activations to its
    /// children (weight rule). Not fired for the seed batch of the top-level
    /// subproblem, which has no triggering comparison.
    virtual void on_batch(std::uint64_t /*turn*/, double /*trigger_weight*/,
                          double /*batch_weight*/, std::size_t /*batch_size*/) {}

    /// boxsort: a turn whose median request reached the oracle.
    /// decided_weight: active weight whose roots lie on the decided side
    /// (including the selected comparison); in_interval_weight: active weight
    /// strictly inside the pre-call interval.
    virtual void on_oracle_turn(std::uint64_t /*turn*/, double /*decided_weight*/,
                                double /*in_interval_weight*/) {}

    /// both drivers: interval state after a median request.
    virtual void on_interval(std::uint64_t /*turn*/, const SearchInterval& /*before*/,
                             const SearchInterval& /*after*/) {}

    /// quicksort: one recursion level finished resolving.
    virtual void on_level(std::size_t /*pending*/, std::uint64_t /*oracle_calls*/) {}
};

}  // namespace psearch
