#pragma once

#include "psearch/rational.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace psearch {

using ItemIndex = std::uint32_t;

/// Answer of the decision oracle for a probe lambda: is the probe below,
/// exactly at, or above the (unknown) optimum lambda*?
enum class OracleAnswer { Below, At, Above };

/// Position of lambda* relative to a tested comparison root.
enum class RootSide { StarBelow, StarAt, StarAbove };

/// Outcome of a pairwise item comparison. Strict: ties must be broken by
/// item index inside the problem, never inside the engine.
enum class Ordering { FirstLow, FirstHigh };

inline Ordering flip(Ordering o) {
    return o == Ordering::FirstLow ? Ordering::FirstHigh : Ordering::FirstLow;
}

struct EngineError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The oracle contradicted what the interval already knows about lambda*.
struct OracleInconsistency : EngineError {
    using EngineError::EngineError;
};

/// A problem broke its contract (recover outside the interval, intransitive
/// comparator, missing planted hit, ...).
struct ContractViolation : EngineError {
    using EngineError::EngineError;
};

/// A pairwise comparison expressed as a function of where lambda* lies:
/// either constant, or pivoting at a single root (degree-1 forms only).
/// Default-constructs as constant FirstLow.
class ComparisonForm {
  public:
    ComparisonForm() = default;

    static ComparisonForm constant(Ordering order) {
        ComparisonForm f;
        f.below_ = f.at_ = f.above_ = order;
        return f;
    }

    /// Throws std::invalid_argument if star_below == star_above (such a form
    /// must be expressed as constant).
    static ComparisonForm pivotal(Rational root, Ordering star_below, Ordering star_at,
                                  Ordering star_above);

    bool is_constant() const { return !root_.has_value(); }
    bool is_pivotal() const { return root_.has_value(); }

    const Rational& root() const { return *root_; }  // pivotal forms only

    Ordering order_for(RootSide side) const {
        switch (side) {
            case RootSide::StarBelow: return below_;
            case RootSide::StarAt: return at_;
            default: return above_;
        }
    }

  private:
    std::optional<Rational> root_;
    Ordering below_ = Ordering::FirstLow;
    Ordering at_ = Ordering::FirstLow;
    Ordering above_ = Ordering::FirstLow;
};

inline Ordering apply_form(const ComparisonForm& form, RootSide side) {
    return form.order_for(side);
}

/// Everything known about lambda*: an open interval (lo, hi) plus an
/// optional exact hit. lo is the greatest probe answered Below, hi the
/// smallest probe answered Above; the interval never widens.
class SearchInterval {
  public:
    const std::optional<Rational>& lower() const { return lo_; }
    const std::optional<Rational>& upper() const { return hi_; }
    const std::optional<Rational>& found() const { return found_; }

    /// Strictly inside (lo, hi)?
    bool contains(const Rational& x) const {
        return (!lo_ || *lo_ < x) && (!hi_ || x < *hi_);
    }

    /// The side of lambda* relative to rho if the interval already decides
    /// it (rho outside (lo,hi), or an exact hit recorded); nullopt otherwise.
    std::optional<RootSide> classify(const Rational& rho) const;

    /// Records an oracle answer at rho. Throws OracleInconsistency when the
    /// answer contradicts the current knowledge (e.g. Below at rho >= hi).
    void tighten(const Rational& rho, OracleAnswer answer);

    std::string str() const;

  private:
    std::optional<Rational> lo_, hi_, found_;
};

/// Counters for one driver run.
struct RunStats {
    std::uint64_t median_requests = 0;   // resolve_root invocations
    std::uint64_t oracle_calls = 0;      // of which called the oracle
    std::uint64_t free_resolutions = 0;  // of which were answered by the interval
    std::uint64_t comparisons_resolved = 0;  // every comparison whose ordering got fixed
    std::uint64_t turns = 0;
    std::vector<std::pair<std::uint64_t, double>> active_weight_trace;
};

/// median_requests must always equal oracle_calls + free_resolutions.
inline bool stats_identity_holds(const RunStats& s) {
    return s.median_requests == s.oracle_calls + s.free_resolutions;
}

/// Contract a problem must satisfy to be solved by the drivers:
///  - compare() is deterministic and, for any fixed side of every root,
///    induces a strict total order on the items;
///  - oracle() answers are monotone-consistent and report At exactly;
///  - recover() returns a value inside the final interval.
class ProblemDefinition {
  public:
    virtual ~ProblemDefinition() = default;

    virtual std::size_t item_count() const = 0;
    virtual ComparisonForm compare(ItemIndex i, ItemIndex j) const = 0;
    virtual OracleAnswer oracle(const Rational& lambda) const = 0;
    virtual Rational recover(std::span<const ItemIndex> order,
                             const SearchInterval& interval) const = 0;
};

using OracleFn = std::function<OracleAnswer(const Rational&)>;

/// What a driver run produces.
struct RunResult {
    std::vector<ItemIndex> order;  // the items sorted by value at lambda*
    Rational lambda_star;
    RunStats stats;
};

/// Resolves the side of lambda* relative to rho. Free (no oracle call) when
/// the interval already decides rho; otherwise calls the oracle exactly once
/// and tightens the interval. Counts one median request either way.
RootSide resolve_root(const Rational& rho, SearchInterval& interval, const OracleFn& oracle,
                      RunStats& stats);

/// Extracts lambda* from the finished sort via problem.recover and checks
/// the containment postcondition (throws ContractViolation otherwise).
Rational finalize(const ProblemDefinition& problem, std::span<const ItemIndex> order,
                  const SearchInterval& interval);

}  // namespace psearch
