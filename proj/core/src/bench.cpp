#include "psearch/bench.hpp"

#include "psearch/boxsort.hpp"
#include "psearch/invariants.hpp"
#include "psearch/problems.hpp"
#include "psearch/quicksort.hpp"
#include "psearch/rng.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>

namespace psearch {

const char* to_string(ProblemKind p) {
    return p == ProblemKind::MedianLines ? "median-lines" : "planted";
}

const char* to_string(DriverKind d) {
    switch (d) {
        case DriverKind::Boxsort: return "boxsort";
        case DriverKind::Quicksort: return "quicksort";
        default: return "both";
    }
}

namespace {

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
    const auto dt = std::chrono::steady_clock::now() - t0;
    return std::chrono::duration<double, std::milli>(dt).count();
}

std::string fmt(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
    return buf;
}

struct TrialProblem {
    std::unique_ptr<ProblemDefinition> problem;
    std::optional<Rational> expected;  // brute-force / planted answer, for --verify
};

TrialProblem make_problem(const BenchConfig& config, std::uint32_t n, std::uint64_t trial_seed) {
    TrialProblem out;
    if (config.instance_path) {
        std::ifstream in(*config.instance_path);
        if (!in) {
            throw UsageError("cannot open instance file '" + *config.instance_path + "'");
        }
        auto lines = read_lines_text(in);
        auto mol = std::make_unique<MedianOfLinesProblem>(std::move(lines));
        if (config.verify) out.expected = median_of_lines_brute(mol->lines());
        out.problem = std::move(mol);
        return out;
    }
    if (config.problem == ProblemKind::MedianLines) {
        auto mol = std::make_unique<MedianOfLinesProblem>(
            generate_median_of_lines(n, trial_seed, config.coeff_max));
        if (config.verify) out.expected = median_of_lines_brute(mol->lines());
        out.problem = std::move(mol);
    } else {
        auto planted = std::make_unique<PlantedProblem>(
            PlantedProblem::make(n, trial_seed, config.coeff_max));
        if (config.verify) out.expected = planted->planted_lambda();
        out.problem = std::move(planted);
    }
    return out;
}

void validate(const BenchConfig& config) {
    if (config.trials < 1) throw UsageError("--trials must be >= 1");
    if (config.instance_path) {
        if (config.problem != ProblemKind::MedianLines) {
            throw UsageError("--instance requires --problem median-lines (the text format "
                             "stores lines only)");
        }
        return;
    }
    if (config.sizes.empty()) throw UsageError("at least one --n is required");
    for (std::uint32_t n : config.sizes) {
        if (n == 0) throw UsageError("--n must be positive");
        if (config.problem == ProblemKind::MedianLines && n % 2 == 0) {
            throw UsageError("median-lines requires odd n, got " + std::to_string(n));
        }
        if (config.problem == ProblemKind::Planted && n < 2) {
            throw UsageError("planted requires n >= 2");
        }
    }
    if (config.coeff_max == 0) throw UsageError("--coeff-max must be >= 1");
}

}  // namespace

std::vector<TrialRecord> run_trials(const BenchConfig& config) {
    validate(config);
    std::vector<std::uint32_t> sizes = config.sizes;
    if (config.instance_path) sizes = {0};  // size comes from the file

    std::vector<DriverKind> drivers;
    if (config.driver == DriverKind::Boxsort || config.driver == DriverKind::Both) {
        drivers.push_back(DriverKind::Boxsort);
    }
    if (config.driver == DriverKind::Quicksort || config.driver == DriverKind::Both) {
        drivers.push_back(DriverKind::Quicksort);
    }

    std::vector<TrialRecord> records;
    records.reserve(sizes.size() * config.trials * drivers.size());
    for (std::uint32_t n : sizes) {
        for (std::uint32_t trial = 0; trial < config.trials; ++trial) {
            const std::uint64_t trial_seed = mix_seed(config.seed, trial);
            TrialProblem tp = make_problem(config, n, trial_seed);
            for (DriverKind driver : drivers) {
                TrialRecord rec;
                rec.problem = config.problem;
                rec.driver = driver;
                rec.n = static_cast<std::uint32_t>(tp.problem->item_count());
                rec.trial = trial;
                rec.seed = trial_seed;
                const auto t0 = std::chrono::steady_clock::now();
                RunResult run;
                if (driver == DriverKind::Boxsort) {
                    BoxsortConfig bc;
                    bc.base_threshold = config.base_threshold;
                    run = run_boxsort(*tp.problem, trial_seed, bc);
                } else {
                    run = run_quicksort(*tp.problem, trial_seed);
                }
                rec.time_ms = elapsed_ms(t0);
                rec.median_requests = run.stats.median_requests;
                rec.oracle_calls = run.stats.oracle_calls;
                rec.free_resolutions = run.stats.free_resolutions;
                rec.lambda = run.lambda_star;
                if (tp.expected) rec.verified = (run.lambda_star == *tp.expected);
                records.push_back(std::move(rec));
            }
        }
    }
    return records;
}

bool all_verified(std::span<const TrialRecord> records) {
    for (const auto& r : records) {
        if (r.verified && !*r.verified) return false;
    }
    return true;
}

std::vector<AggregateRow> aggregate(std::span<const TrialRecord> records) {
    std::vector<AggregateRow> rows;
    struct Acc {
        std::uint64_t requests = 0, calls = 0, frees = 0;
        double time_sum = 0.0, time_min = 0.0, time_max = 0.0;
    };
    std::vector<Acc> accs;
    for (const auto& r : records) {
        std::size_t at = rows.size();
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].n == r.n && rows[i].driver == r.driver && rows[i].problem == r.problem) {
                at = i;
                break;
            }
        }
        if (at == rows.size()) {
            AggregateRow row;
            row.problem = r.problem;
            row.driver = r.driver;
            row.n = r.n;
            rows.push_back(row);
            accs.push_back(Acc{0, 0, 0, 0.0, r.time_ms, r.time_ms});
        }
        AggregateRow& row = rows[at];
        Acc& acc = accs[at];
        row.trials += 1;
        acc.requests += r.median_requests;
        acc.calls += r.oracle_calls;
        acc.frees += r.free_resolutions;
        acc.time_sum += r.time_ms;
        acc.time_min = std::min(acc.time_min, r.time_ms);
        acc.time_max = std::max(acc.time_max, r.time_ms);
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
        AggregateRow& row = rows[i];
        const Acc& acc = accs[i];
        const double t = row.trials;
        row.time_avg_ms = acc.time_sum / t;
        row.time_min_ms = acc.time_min;
        row.time_max_ms = acc.time_max;
        row.avg_median_requests = static_cast<double>(acc.requests) / t;
        row.avg_oracle_calls = static_cast<double>(acc.calls) / t;
        row.avg_free_resolutions = static_cast<double>(acc.frees) / t;
    }
    return rows;
}

namespace {

std::vector<std::string> trial_cells(const TrialRecord& r) {
    return {to_string(r.problem),
            to_string(r.driver),
            std::to_string(r.n),
            std::to_string(r.trial),
            std::to_string(r.seed),
            fmt(r.time_ms, 3),
            std::to_string(r.median_requests),
            std::to_string(r.oracle_calls),
            std::to_string(r.free_resolutions),
            r.lambda.numerator_str(),
            r.lambda.denominator_str(),
            r.verified ? (*r.verified ? "true" : "false") : ""};
}

std::vector<std::string> aggregate_cells(const AggregateRow& r) {
    return {to_string(r.problem),
            to_string(r.driver),
            std::to_string(r.n),
            std::to_string(r.trials),
            fmt(r.time_avg_ms, 3),
            fmt(r.time_min_ms, 3),
            fmt(r.time_max_ms, 3),
            fmt(r.avg_median_requests, 4),
            fmt(r.avg_oracle_calls, 4),
            fmt(r.avg_free_resolutions, 4)};
}

std::vector<std::string> split_header(const char* header) {
    std::vector<std::string> out;
    std::istringstream in(header);
    std::string cell;
    while (std::getline(in, cell, ',')) out.push_back(cell);
    return out;
}

void write_csv(std::ostream& out, const char* header,
               const std::vector<std::vector<std::string>>& rows) {
    out << header << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            out << row[i];
        }
        out << '\n';
    }
}

void write_table(std::ostream& out, const char* header,
                 const std::vector<std::vector<std::string>>& rows) {
    const auto head = split_header(header);
    std::vector<std::size_t> width(head.size());
    for (std::size_t i = 0; i < head.size(); ++i) width[i] = head[i].size();
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
    }
    const auto emit = [&](const std::vector<std::string>& row) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << "  ";
            out << std::string(width[i] - row[i].size(), ' ') << row[i];
        }
        out << '\n';
    };
    emit(head);
    for (const auto& row : rows) emit(row);
}

}  // namespace

void write_trials(std::ostream& out, std::span<const TrialRecord> records, OutputFormat format) {
    std::vector<std::vector<std::string>> rows;
    rows.reserve(records.size());
    for (const auto& r : records) rows.push_back(trial_cells(r));
    if (format == OutputFormat::Csv) write_csv(out, kTrialCsvHeader, rows);
    else write_table(out, kTrialCsvHeader, rows);
}

void write_aggregates(std::ostream& out, std::span<const AggregateRow> rows_in,
                      OutputFormat format) {
    std::vector<std::vector<std::string>> rows;
    rows.reserve(rows_in.size());
    for (const auto& r : rows_in) rows.push_back(aggregate_cells(r));
    if (format == OutputFormat::Csv) write_csv(out, kAggregateCsvHeader, rows);
    else write_table(out, kAggregateCsvHeader, rows);
}

// ---------------------------------------------------------------------------
// Instrumented invariant suite

namespace {

void check_sortedness(const ProblemDefinition& problem, const RunResult& run,
                      const Rational& lambda, const char* driver, std::uint32_t n,
                      std::uint32_t trial, std::vector<std::string>& failures) {
    const auto value_at = [&](ItemIndex i) -> Rational {
        if (const auto* mol = dynamic_cast<const MedianOfLinesProblem*>(&problem)) {
            return mol->value_at(i, lambda);
        }
        return dynamic_cast<const PlantedProblem&>(problem).value_at(i, lambda);
    };
    for (std::size_t k = 0; k + 1 < run.order.size(); ++k) {
        const Rational a = value_at(run.order[k]);
        const Rational b = value_at(run.order[k + 1]);
        if (a > b || (a == b && run.order[k] > run.order[k + 1])) {
            std::ostringstream os;
            os << driver << " n=" << n << " trial=" << trial << ": output not sorted at lambda* "
               << "(positions " << k << ", " << k + 1 << ")";
            failures.push_back(os.str());
            return;
        }
    }
}

}  // namespace

VerifyReport run_verify(const VerifyConfig& config) {
    VerifyReport report;
    if (config.sizes.empty()) throw UsageError("at least one --n is required");
    if (config.trials < 1) throw UsageError("--trials must be >= 1");

    for (std::uint32_t n : config.sizes) {
        for (std::uint32_t trial = 0; trial < config.trials; ++trial) {
            const std::uint64_t trial_seed = mix_seed(config.seed, trial);
            auto fail = [&](const std::string& what) {
                std::ostringstream os;
                os << "n=" << n << " trial=" << trial << ": " << what;
                report.failures.push_back(os.str());
            };

            std::unique_ptr<ProblemDefinition> problem;
            Rational expected;
            if (config.problem == ProblemKind::MedianLines) {
                if (n % 2 == 0) throw UsageError("median-lines requires odd n");
                auto mol = std::make_unique<MedianOfLinesProblem>(
                    generate_median_of_lines(n, trial_seed, config.coeff_max));
                expected = median_of_lines_brute(mol->lines());
                problem = std::move(mol);
            } else {
                if (n < 2) throw UsageError("planted requires n >= 2");
                auto planted = std::make_unique<PlantedProblem>(
                    PlantedProblem::make(n, trial_seed, config.coeff_max));
                expected = planted->planted_lambda();
                problem = std::move(planted);
            }

            InvariantChecker box_checker;
            BoxsortConfig bc;
            bc.base_threshold = config.base_threshold;
            bc.observer = &box_checker;
            bc.fault_extra_halving = config.inject_weight_fault;
            const RunResult box = run_boxsort(*problem, trial_seed, bc);
            ++report.runs;

            InvariantChecker quick_checker;
            QuicksortConfig qc;
            qc.observer = &quick_checker;
            const RunResult quick = run_quicksort(*problem, trial_seed, qc);
            ++report.runs;

            if (!box_checker.ok()) {
                fail("boxsort " + box_checker.first_violation() + " (+" +
                     std::to_string(box_checker.total_violations() - 1) + " more)");
            }
            if (!quick_checker.ok()) {
                fail("quicksort " + quick_checker.first_violation());
            }
            if (!stats_identity_holds(box.stats)) {
                fail("boxsort stats identity broken: requests != calls + free");
            }
            if (!stats_identity_holds(quick.stats)) {
                fail("quicksort stats identity broken: requests != calls + free");
            }
            if (box.lambda_star != quick.lambda_star) {
                fail("drivers disagree: boxsort " + box.lambda_star.str() + " vs quicksort " +
                     quick.lambda_star.str());
            }
            if (box.lambda_star != expected) {
                fail("boxsort answer " + box.lambda_star.str() + " != reference " +
                     expected.str());
            }
            if (quick.lambda_star != expected) {
                fail("quicksort answer " + quick.lambda_star.str() + " != reference " +
                     expected.str());
            }
            check_sortedness(*problem, box, expected, "boxsort", n, trial, report.failures);
            check_sortedness(*problem, quick, expected, "quicksort", n, trial, report.failures);
        }
    }
    return report;
}

}  // namespace psearch
