#include "psearch/problems.hpp"

#include "psearch/rng.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <utility>

namespace psearch {

ComparisonForm line_comparison_form(const Line& li, const Line& lj, ItemIndex i, ItemIndex j) {
    if (li.slope == lj.slope) {
        if (li.intercept == lj.intercept) {
            std::ostringstream os;
            os << "identical lines at indices " << i << " and " << j;
            throw ContractViolation(os.str());
        }
        return ComparisonForm::constant(li.intercept < lj.intercept ? Ordering::FirstLow
                                                                    : Ordering::FirstHigh);
    }
    Rational root = (lj.intercept - li.intercept) / (li.slope - lj.slope);
    // Below the root the value difference v_i - v_j has sign -sign(a_i - a_j).
    const Ordering below = li.slope > lj.slope ? Ordering::FirstLow : Ordering::FirstHigh;
    const Ordering at = i < j ? Ordering::FirstLow : Ordering::FirstHigh;
    return ComparisonForm::pivotal(std::move(root), below, at, flip(below));
}

// ---------------------------------------------------------------------------
// MedianOfLinesProblem

MedianOfLinesProblem::MedianOfLinesProblem(std::vector<Line> lines) : lines_(std::move(lines)) {
    if (lines_.empty() || lines_.size() % 2 == 0) {
        throw std::invalid_argument("median-of-lines: item count must be odd and positive");
    }
    std::set<std::pair<Rational, Rational>> seen;
    std::set<Rational> roots;
    for (const Line& l : lines_) {
        if (l.slope.sign() <= 0) {
            throw std::invalid_argument("median-of-lines: slopes must be positive");
        }
        if (!seen.emplace(l.slope, l.intercept).second) {
            throw std::invalid_argument("median-of-lines: lines must be pairwise distinct");
        }
        if (!roots.insert(l.axis_root()).second) {
            throw std::invalid_argument("median-of-lines: axis roots must be pairwise distinct");
        }
    }
}

ComparisonForm MedianOfLinesProblem::compare(ItemIndex i, ItemIndex j) const {
    return line_comparison_form(lines_[i], lines_[j], i, j);
}

OracleAnswer MedianOfLinesProblem::oracle(const Rational& lambda) const {
    const std::size_t half = (lines_.size() - 1) / 2;
    std::size_t neg = 0, pos = 0;
    for (const Line& l : lines_) {
        const int s = (l.slope * lambda + l.intercept).sign();
        if (s < 0) ++neg;
        else if (s > 0) ++pos;
    }
    if (neg > half) return OracleAnswer::Below;
    if (pos > half) return OracleAnswer::Above;
    return OracleAnswer::At;
}

Rational MedianOfLinesProblem::recover(std::span<const ItemIndex> order,
                                       const SearchInterval& interval) const {
    if (interval.found()) return *interval.found();
    return lines_[order[order.size() / 2]].axis_root();
}

Rational MedianOfLinesProblem::value_at(ItemIndex i, const Rational& lambda) const {
    return lines_[i].slope * lambda + lines_[i].intercept;
}

Rational median_of_lines_brute(std::span<const Line> lines) {
    std::vector<Rational> roots;
    roots.reserve(lines.size());
    for (const Line& l : lines) roots.push_back(l.axis_root());
    std::sort(roots.begin(), roots.end());
    return roots[(roots.size() - 1) / 2];
}

// ---------------------------------------------------------------------------
// Generators

namespace {

// Uniform in [1, coeff_max].
long long draw_coeff(Rng& rng, std::uint32_t coeff_max) {
    return static_cast<long long>(rng.below(coeff_max) + 1);
}

Line draw_line(Rng& rng, std::uint32_t coeff_max, bool signed_slope) {
    const long long p = draw_coeff(rng, coeff_max);
    const long long q = draw_coeff(rng, coeff_max);
    const bool slope_neg = signed_slope && rng.coin();
    const bool intercept_neg = rng.coin();
    const long long r = draw_coeff(rng, coeff_max);
    const long long s = draw_coeff(rng, coeff_max);
    return Line{Rational(slope_neg ? -p : p, q), Rational(intercept_neg ? -r : r, s)};
}

}  // namespace

MedianOfLinesProblem generate_median_of_lines(std::uint32_t n, std::uint64_t seed,
                                              std::uint32_t coeff_max) {
    if (n == 0 || n % 2 == 0) {
        throw std::invalid_argument("generate_median_of_lines: n must be odd and positive");
    }
    if (coeff_max == 0) {
        throw std::invalid_argument("generate_median_of_lines: coeff_max must be >= 1");
    }
    Rng rng(seed);
    std::vector<Line> lines;
    lines.reserve(n);
    std::set<std::pair<Rational, Rational>> seen;
    std::set<Rational> roots;
    while (lines.size() < n) {
        Line l = draw_line(rng, coeff_max, /*signed_slope=*/false);
        if (!seen.emplace(l.slope, l.intercept).second) continue;
        if (!roots.insert(l.axis_root()).second) {
            seen.erase({l.slope, l.intercept});
            continue;
        }
        lines.push_back(std::move(l));
    }
    return MedianOfLinesProblem(std::move(lines));
}

// ---------------------------------------------------------------------------
// PlantedProblem

PlantedProblem::PlantedProblem(std::vector<Line> lines, Rational lambda_star)
    : PlantedProblem(Unchecked{}, std::move(lines), std::move(lambda_star)) {
    if (lines_.size() < 2) {
        throw std::invalid_argument("PlantedProblem: need at least two lines");
    }
    bool is_root = false;
    for (std::size_t i = 0; i + 1 < lines_.size() && !is_root; ++i) {
        for (std::size_t j = i + 1; j < lines_.size() && !is_root; ++j) {
            if (lines_[i].slope == lines_[j].slope) continue;
            is_root = lambda_star_ == (lines_[j].intercept - lines_[i].intercept) /
                                          (lines_[i].slope - lines_[j].slope);
        }
    }
    if (!is_root) {
        throw std::invalid_argument(
            "PlantedProblem: lambda_star must be a pairwise intersection root");
    }
}

PlantedProblem PlantedProblem::make(std::uint32_t n, std::uint64_t seed,
                                    std::uint32_t coeff_max) {
    if (n < 2) {
        throw std::invalid_argument("PlantedProblem: n must be >= 2");
    }
    Rng rng(seed);
    while (true) {
        std::vector<Line> lines;
        lines.reserve(n);
        std::set<std::pair<Rational, Rational>> seen;
        while (lines.size() < n) {
            Line l = draw_line(rng, coeff_max, /*signed_slope=*/true);
            if (!seen.emplace(l.slope, l.intercept).second) continue;
            lines.push_back(std::move(l));
        }
        bool has_crossing = false;
        for (std::size_t i = 1; i < lines.size() && !has_crossing; ++i) {
            has_crossing = lines[i].slope != lines[0].slope;
        }
        if (!has_crossing) continue;  // all parallel: no intersection root to plant

        while (true) {
            const auto i = static_cast<ItemIndex>(rng.below(n));
            const auto j = static_cast<ItemIndex>(rng.below(n));
            if (i == j || lines[i].slope == lines[j].slope) continue;
            Rational star =
                (lines[j].intercept - lines[i].intercept) / (lines[i].slope - lines[j].slope);
            return PlantedProblem(Unchecked{}, std::move(lines), std::move(star));
        }
    }
}

ComparisonForm PlantedProblem::compare(ItemIndex i, ItemIndex j) const {
    return line_comparison_form(lines_[i], lines_[j], i, j);
}

OracleAnswer PlantedProblem::oracle(const Rational& lambda) const {
    if (lambda < lambda_star_) return OracleAnswer::Below;
    if (lambda > lambda_star_) return OracleAnswer::Above;
    return OracleAnswer::At;
}

Rational PlantedProblem::recover(std::span<const ItemIndex>,
                                 const SearchInterval& interval) const {
    if (!interval.found()) {
        throw ContractViolation(
            "planted recover: run finished without an exact hit; the planted root "
            "can only be resolved by an oracle call answering At");
    }
    return *interval.found();
}

Rational PlantedProblem::value_at(ItemIndex i, const Rational& lambda) const {
    return lines_[i].slope * lambda + lines_[i].intercept;
}

// ---------------------------------------------------------------------------
// Text format

std::vector<Line> read_lines_text(std::istream& in) {
    std::vector<Line> lines;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        if (const auto hash = raw.find('#'); hash != std::string::npos) {
            raw.erase(hash);
        }
        std::istringstream fields(raw);
        std::string a, b, extra;
        if (!(fields >> a)) continue;  // blank or comment-only line
        if (!(fields >> b) || (fields >> extra)) {
            throw std::runtime_error("instance file line " + std::to_string(line_no) +
                                     ": expected exactly two rationals");
        }
        try {
            lines.push_back(Line{Rational::from_string(a), Rational::from_string(b)});
        } catch (const std::invalid_argument& e) {
            throw std::runtime_error("instance file line " + std::to_string(line_no) + ": " +
                                     e.what());
        }
    }
    return lines;
}

void write_lines_text(std::ostream& out, std::span<const Line> lines) {
    for (const Line& l : lines) {
        out << l.slope.str() << ' ' << l.intercept.str() << '\n';
    }
}

}  // namespace psearch
