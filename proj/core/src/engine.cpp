#include "psearch/engine.hpp"

#include <sstream>

namespace psearch {

ComparisonForm ComparisonForm::pivotal(Rational root, Ordering star_below, Ordering star_at,
                                       Ordering star_above) {
    if (star_below == star_above) {
        throw std::invalid_argument(
            "ComparisonForm: a form with equal below/above orderings must be constant");
    }
    ComparisonForm f;
    f.root_ = std::move(root);
    f.below_ = star_below;
    f.at_ = star_at;
    f.above_ = star_above;
    return f;
}

std::optional<RootSide> SearchInterval::classify(const Rational& rho) const {
    if (found_) {
        if (rho < *found_) return RootSide::StarAbove;
        if (rho > *found_) return RootSide::StarBelow;
        return RootSide::StarAt;
    }
    if (lo_ && rho <= *lo_) return RootSide::StarAbove;
    if (hi_ && rho >= *hi_) return RootSide::StarBelow;
    return std::nullopt;
}

void SearchInterval::tighten(const Rational& rho, OracleAnswer answer) {
    const auto fail = [&](const char* what) {
        std::ostringstream os;
        os << "oracle inconsistency: answer '" << what << "' at lambda=" << rho
           << " contradicts interval " << str();
        throw OracleInconsistency(os.str());
    };
    switch (answer) {
        case OracleAnswer::Below:
            if (found_ && rho >= *found_) fail("Below");
            if (hi_ && rho >= *hi_) fail("Below");
            if (!lo_ || *lo_ < rho) lo_ = rho;
            break;
        case OracleAnswer::Above:
            if (found_ && rho <= *found_) fail("Above");
            if (lo_ && rho <= *lo_) fail("Above");
            if (!hi_ || rho < *hi_) hi_ = rho;
            break;
        case OracleAnswer::At:
            if (found_ && rho != *found_) fail("At");
            if (lo_ && rho <= *lo_) fail("At");
            if (hi_ && rho >= *hi_) fail("At");
            found_ = rho;
            break;
    }
}

std::string SearchInterval::str() const {
    std::ostringstream os;
    os << '(';
    if (lo_) os << *lo_; else os << "-inf";
    os << ", ";
    if (hi_) os << *hi_; else os << "+inf";
    if (found_) os << "; found=" << *found_;
    os << ')';
    return os.str();
}

RootSide resolve_root(const Rational& rho, SearchInterval& interval, const OracleFn& oracle,
                      RunStats& stats) {
    ++stats.median_requests;
    if (auto implied = interval.classify(rho)) {
        ++stats.free_resolutions;
        return *implied;
    }
    const OracleAnswer answer = oracle(rho);
    ++stats.oracle_calls;
    interval.tighten(rho, answer);
    switch (answer) {
        case OracleAnswer::Below: return RootSide::StarAbove;
        case OracleAnswer::Above: return RootSide::StarBelow;
        default: return RootSide::StarAt;
    }
}

Rational finalize(const ProblemDefinition& problem, std::span<const ItemIndex> order,
                  const SearchInterval& interval) {
    Rational value = problem.recover(order, interval);
    const bool above_lo = !interval.lower() || *interval.lower() <= value;
    const bool below_hi = !interval.upper() || value <= *interval.upper();
    if (!above_lo || !below_hi) {
        std::ostringstream os;
        os << "recover() returned " << value << " outside the final interval " << interval.str();
        throw ContractViolation(os.str());
    }
    return value;
}

}  // namespace psearch
