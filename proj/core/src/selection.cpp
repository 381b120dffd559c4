#include "psearch/selection.hpp"

#include <cmath>

namespace psearch {

Rational weighted_median(std::span<const WeightedKey> entries, Rng& rng) {
    if (entries.empty()) {
        throw std::invalid_argument("weighted_median: empty input");
    }
    for (const auto& e : entries) {
        if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
            throw std::invalid_argument("weighted_median: weights must be positive and finite");
        }
    }
    const std::size_t at = detail::weighted_median_index(
        entries.size(), [&](std::size_t i) -> const Rational& { return entries[i].key; },
        [&](std::size_t i) { return entries[i].weight; }, rng);
    return entries[at].key;
}

Rational plain_median(std::span<const Rational> keys, Rng& rng) {
    if (keys.empty()) {
        throw std::invalid_argument("plain_median: empty input");
    }
    const std::size_t rank = (keys.size() + 1) / 2;
    const std::size_t at = detail::select_rank_index(
        keys.size(), [&](std::size_t i) -> const Rational& { return keys[i]; }, rank, rng);
    return keys[at];
}

}  // namespace psearch
