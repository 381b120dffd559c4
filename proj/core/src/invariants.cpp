#include "psearch/invariants.hpp"

#include <cmath>
#include <sstream>

namespace psearch {

namespace {
constexpr std::size_t kMaxStored = 64;

bool widened(const std::optional<Rational>& before, const std::optional<Rational>& after,
             bool is_lower) {
    if (before && !after) return true;
    if (before && after) return is_lower ? *after < *before : *after > *before;
    return false;
}
}  // namespace

void InvariantChecker::record(std::uint64_t turn, std::string what) {
    ++total_;
    if (violations_.size() < kMaxStored) {
        violations_.push_back({turn, std::move(what)});
    }
}

void InvariantChecker::on_activation(std::uint64_t turn, double weight,
                                     std::uint32_t virtual_depth) {
    const double bound = std::ldexp(1.0, -2 * static_cast<int>(virtual_depth));
    if (!(weight >= bound)) {
        std::ostringstream os;
        os << "depth bound: activated weight " << weight << " < 4^-" << virtual_depth << " = "
           << bound;
        record(turn, os.str());
    }
}

void InvariantChecker::on_batch(std::uint64_t turn, double trigger_weight, double batch_weight,
                                std::size_t batch_size) {
    if (!(batch_weight <= 0.5 * trigger_weight)) {
        std::ostringstream os;
        os << "weight rule: batch of " << batch_size << " comparisons got " << batch_weight
           << " > half of trigger weight " << trigger_weight;
        record(turn, os.str());
    }
}

void InvariantChecker::on_oracle_turn(std::uint64_t turn, double decided_weight,
                                      double in_interval_weight) {
    // 1e-9 relative slack: the guarantee is exact in real arithmetic, the
    // two sums are accumulated in doubles in different orders.
    if (!(decided_weight >= 0.5 * in_interval_weight * (1.0 - 1e-9))) {
        std::ostringstream os;
        os << "median split: decided-side weight " << decided_weight
           << " < half of in-interval weight " << in_interval_weight;
        record(turn, os.str());
    }
}

void InvariantChecker::on_interval(std::uint64_t turn, const SearchInterval& before,
                                   const SearchInterval& after) {
    if (widened(before.lower(), after.lower(), /*is_lower=*/true) ||
        widened(before.upper(), after.upper(), /*is_lower=*/false)) {
        record(turn, "interval widened: " + before.str() + " -> " + after.str());
    }
    if (before.found() && (!after.found() || *after.found() != *before.found())) {
        record(turn, "found hit changed: " + before.str() + " -> " + after.str());
    }
}

void InvariantChecker::on_level(std::size_t pending, std::uint64_t oracle_calls) {
    if (pending == 0) return;
    std::uint64_t bound = 1;
    std::size_t k = pending;
    while (k > 1) {
        k = (k + 1) / 2;
        ++bound;
    }
    if (oracle_calls > bound) {
        std::ostringstream os;
        os << "level call bound: " << oracle_calls << " oracle calls for " << pending
           << " pending comparisons (bound " << bound << ")";
        record(0, os.str());
    }
}

std::string InvariantChecker::first_violation() const {
    if (violations_.empty()) return {};
    std::ostringstream os;
    os << "turn " << violations_.front().turn << ": " << violations_.front().what;
    return os.str();
}

}  // namespace psearch
