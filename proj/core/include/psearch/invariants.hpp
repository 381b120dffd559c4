#pragma once

#include "psearch/observer.hpp"

#include <string>
#include <vector>

namespace psearch {

/// Checks the scheduling invariants of a run while it executes:
///   (a) weight rule: every activation batch gets at most half the weight of
///       the comparison that triggered it;
///   (b) depth bound: every activated comparison has weight >= 4^-depth;
///   (c) weighted-median split: on every oracle-call turn the decided-side
///       active weight is at least half the in-interval active weight;
///   (d) the interval never widens.
/// Violations are recorded (up to a cap), never thrown.
class InvariantChecker final : public RunObserver {
  public:
    struct Violation {
        std::uint64_t turn;
        std::string what;
    };

    void on_activation(std::uint64_t turn, double weight, std::uint32_t virtual_depth) override;
    void on_batch(std::uint64_t turn, double trigger_weight, double batch_weight,
                  std::size_t batch_size) override;
    void on_oracle_turn(std::uint64_t turn, double decided_weight,
                        double in_interval_weight) override;
    void on_interval(std::uint64_t turn, const SearchInterval& before,
                     const SearchInterval& after) override;
    void on_level(std::size_t pending, std::uint64_t oracle_calls) override;

    bool ok() const { return violations_.empty(); }
    std::uint64_t total_violations() const { return total_; }
    const std::vector<Violation>& violations() const { return violations_; }

    /// The first violation as a single printable line, empty when ok().
    std::string first_violation() const;

  private:
    void record(std::uint64_t turn, std::string what);

    std::vector<Violation> violations_;
    std::uint64_t total_ = 0;
};

}  // namespace psearch
