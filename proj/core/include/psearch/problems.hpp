#pragma once

#include "psearch/engine.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace psearch {

/// A line y = a*x + b with exact rational coefficients.
struct Line {
    Rational slope;
    Rational intercept;

    Rational axis_root() const { return -intercept / slope; }  // x with y = 0

    friend bool operator==(const Line& l, const Line& r) {
        return l.slope == r.slope && l.intercept == r.intercept;
    }
};

/// The comparison form for "value of line i vs value of line j at lambda*":
/// constant for parallel lines (ordered by intercept), pivotal at the
/// intersection x otherwise, ties at the root broken by item index.
/// Throws ContractViolation for identical lines.
ComparisonForm line_comparison_form(const Line& li, const Line& lj, ItemIndex i, ItemIndex j);

/// The median-of-lines problem: find the line whose x-axis crossing has as
/// many lines directly above as below it. Requires an odd number of pairwise
/// distinct positive-slope lines with pairwise distinct axis roots; then the
/// answer lambda* is the median axis root and the decision is monotone.
class MedianOfLinesProblem final : public ProblemDefinition {
  public:
    /// Validates the instance invariants; throws std::invalid_argument.
    explicit MedianOfLinesProblem(std::vector<Line> lines);

    std::size_t item_count() const override { return lines_.size(); }
    ComparisonForm compare(ItemIndex i, ItemIndex j) const override;

    /// Evaluates every line at lambda exactly and classifies by sign counts.
    OracleAnswer oracle(const Rational& lambda) const override;

    /// The found hit if any, else the axis root of the middle line of the
    /// sorted order (the median-by-value line at lambda* is the median-root line).
    Rational recover(std::span<const ItemIndex> order,
                     const SearchInterval& interval) const override;

    const std::vector<Line>& lines() const { return lines_; }
    Rational value_at(ItemIndex i, const Rational& lambda) const;

  private:
    std::vector<Line> lines_;
};

/// Independent reference answer: the median of the n axis roots, by sorting.
Rational median_of_lines_brute(std::span<const Line> lines);

/// Random instance: slopes p/q and intercepts +-p'/q' with all of p, q, p',
/// q' uniform in [1, coeff_max]; lines are redrawn until pairwise distinct
/// with pairwise distinct axis roots. Deterministic per seed. n must be odd.
MedianOfLinesProblem generate_median_of_lines(std::uint32_t n, std::uint64_t seed,
                                              std::uint32_t coeff_max = 10000);

/// Synthetic problem with a known planted optimum: lambda* is the
/// intersection root of one uniformly chosen line pair, and the oracle
/// simply compares the probe against it. Exercises the drivers' oracle-call
/// budget with exact verification.
class PlantedProblem final : public ProblemDefinition {
  public:
    /// n >= 2. Lines have nonzero slopes of either sign, pairwise distinct
    /// as functions. Deterministic per seed.
    static PlantedProblem make(std::uint32_t n, std::uint64_t seed,
                               std::uint32_t coeff_max = 10000);

    /// Hand-built instance; lambda_star must be the intersection root of
    /// some line pair (throws std::invalid_argument otherwise).
    PlantedProblem(std::vector<Line> lines, Rational lambda_star);

    std::size_t item_count() const override { return lines_.size(); }
    ComparisonForm compare(ItemIndex i, ItemIndex j) const override;
    OracleAnswer oracle(const Rational& lambda) const override;

    /// The planted lambda* is a comparison root that stays strictly inside
    /// every intermediate interval, so a run can only resolve it through an
    /// oracle call answering At; recover returns that recorded hit and
    /// throws ContractViolation if it is missing.
    Rational recover(std::span<const ItemIndex> order,
                     const SearchInterval& interval) const override;

    const Rational& planted_lambda() const { return lambda_star_; }
    const std::vector<Line>& lines() const { return lines_; }
    Rational value_at(ItemIndex i, const Rational& lambda) const;

  private:
    struct Unchecked {};
    PlantedProblem(Unchecked, std::vector<Line> lines, Rational lambda_star)
        : lines_(std::move(lines)), lambda_star_(std::move(lambda_star)) {}

    std::vector<Line> lines_;
    Rational lambda_star_;
};

/// Instance text format: one input line per geometric line, two whitespace-
/// separated rationals "p/q r/s" ("/1" assumed when omitted); '#' starts a
/// comment; blank lines ignored. Throws std::runtime_error with the line
/// number on malformed input.
std::vector<Line> read_lines_text(std::istream& in);
void write_lines_text(std::ostream& out, std::span<const Line> lines);

}  // namespace psearch
