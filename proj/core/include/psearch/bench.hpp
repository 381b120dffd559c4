#pragma once

#include "psearch/engine.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace psearch {

/// Invalid flag combinations and malformed configs (CLI exit code 2).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class ProblemKind { MedianLines, Planted };
enum class DriverKind { Boxsort, Quicksort, Both };
enum class OutputFormat { Csv, Table };

const char* to_string(ProblemKind p);
const char* to_string(DriverKind d);  // "both" never appears in records

struct BenchConfig {
    ProblemKind problem = ProblemKind::MedianLines;
    DriverKind driver = DriverKind::Both;
    std::vector<std::uint32_t> sizes;  // --n, repeatable; ignored with --instance
    std::uint32_t trials = 1;
    std::uint64_t seed = 1;
    std::uint32_t coeff_max = 10000;
    OutputFormat format = OutputFormat::Csv;
    std::optional<std::string> out_path;
    bool verify = false;
    std::optional<std::uint32_t> base_threshold;
    std::optional<std::string> instance_path;  // median-lines text format
};

struct TrialRecord {
    ProblemKind problem;
    DriverKind driver;
    std::uint32_t n = 0;
    std::uint32_t trial = 0;
    std::uint64_t seed = 0;  // the derived per-trial seed
    double time_ms = 0.0;
    std::uint64_t median_requests = 0;
    std::uint64_t oracle_calls = 0;
    std::uint64_t free_resolutions = 0;
    Rational lambda;
    std::optional<bool> verified;  // set only when verification ran
};

struct AggregateRow {
    ProblemKind problem;
    DriverKind driver;
    std::uint32_t n = 0;
    std::uint32_t trials = 0;
    double time_avg_ms = 0.0;
    double time_min_ms = 0.0;
    double time_max_ms = 0.0;
    double avg_median_requests = 0.0;
    double avg_oracle_calls = 0.0;
    double avg_free_resolutions = 0.0;
};

inline constexpr const char* kTrialCsvHeader =
    "problem,driver,n,trial,seed,time_ms,median_requests,oracle_calls,free_resolutions,"
    "lambda_num,lambda_den,verified";
inline constexpr const char* kAggregateCsvHeader =
    "problem,driver,n,trials,time_avg_ms,time_min_ms,time_max_ms,avg_median_requests,"
    "avg_oracle_calls,avg_free_resolutions";

/// Runs every (size, trial, driver) combination of the config. The trial
/// instance seed is mix_seed(config.seed, trial); `--driver both` runs both
/// drivers on the same instance (paired). Throws UsageError on invalid
/// configs. Count columns are bit-reproducible for a fixed config.
std::vector<TrialRecord> run_trials(const BenchConfig& config);

std::vector<AggregateRow> aggregate(std::span<const TrialRecord> records);

bool all_verified(std::span<const TrialRecord> records);

void write_trials(std::ostream& out, std::span<const TrialRecord> records, OutputFormat format);
void write_aggregates(std::ostream& out, std::span<const AggregateRow> rows, OutputFormat format);

struct VerifyConfig {
    ProblemKind problem = ProblemKind::MedianLines;
    std::vector<std::uint32_t> sizes;
    std::uint32_t trials = 1;
    std::uint64_t seed = 1;
    std::uint32_t coeff_max = 10000;
    std::optional<std::uint32_t> base_threshold;
    bool inject_weight_fault = false;  // deliberately corrupt the weight rule
};

struct VerifyReport {
    std::vector<std::string> failures;
    std::uint64_t runs = 0;
    bool ok() const { return failures.empty(); }
};

/// The instrumented invariant suite: weight rule, depth weight bound,
/// weighted-median split, interval monotonicity, stats identity, driver
/// agreement and sortedness of the output permutation.
VerifyReport run_verify(const VerifyConfig& config);

}  // namespace psearch
