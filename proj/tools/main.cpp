// psbench: generate parametric-search instances, run the boxsort and
// quicksort drivers over seeded trials, verify against brute force, and
// emit per-trial or aggregate statistics as CSV or an aligned table.

#include "psearch/bench.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct CliOptions {
    psearch::BenchConfig bench;
    psearch::VerifyConfig verify;
    bool inject_weight_fault = false;
};

void add_common_flags(CLI::App* cmd, psearch::BenchConfig& cfg) {
    const std::map<std::string, psearch::ProblemKind> problems{
        {"median-lines", psearch::ProblemKind::MedianLines},
        {"planted", psearch::ProblemKind::Planted}};
    const std::map<std::string, psearch::DriverKind> drivers{
        {"boxsort", psearch::DriverKind::Boxsort},
        {"quicksort", psearch::DriverKind::Quicksort},
        {"both", psearch::DriverKind::Both}};
    const std::map<std::string, psearch::OutputFormat> formats{
        {"csv", psearch::OutputFormat::Csv}, {"table", psearch::OutputFormat::Table}};

    cmd->add_option("--problem", cfg.problem, "Problem family")
        ->transform(CLI::CheckedTransformer(problems, CLI::ignore_case))
        ->default_str("median-lines");
    cmd->add_option("--driver", cfg.driver, "Driver(s) to run")
        ->transform(CLI::CheckedTransformer(drivers, CLI::ignore_case))
        ->default_str("both");
    cmd->add_option("--n", cfg.sizes, "Instance size; may be repeated");
    cmd->add_option("--trials", cfg.trials, "Trials per size")->capture_default_str();
    cmd->add_option("--seed", cfg.seed, "Base seed; trial t uses mix(seed, t)")
        ->capture_default_str();
    cmd->add_option("--coeff-max", cfg.coeff_max, "Coefficient bound for generators")
        ->capture_default_str();
    cmd->add_option("--format", cfg.format, "Output format")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case))
        ->default_str("csv");
    cmd->add_option("--out", cfg.out_path, "Write output to this file instead of stdout");
    cmd->add_option("--base-threshold", cfg.base_threshold,
                    "Override the boxsort base-case threshold");
    cmd->add_option("--instance", cfg.instance_path,
                    "Read a median-lines instance file instead of generating");
}

int write_output(const psearch::BenchConfig& cfg, const std::string& body) {
    if (cfg.out_path) {
        std::ofstream out(*cfg.out_path);
        if (!out) {
            std::cerr << "error: cannot open output file '" << *cfg.out_path << "'\n";
            return kExitUsage;
        }
        out << body;
        return kExitOk;
    }
    std::cout << body;
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"parametric-search benchmark harness (boxsort and quicksort drivers)"};
    app.require_subcommand(1);

    CliOptions opt;

    CLI::App* run = app.add_subcommand("run", "Per-trial records for the selected driver(s)");
    add_common_flags(run, opt.bench);
    run->add_flag("--verify", opt.bench.verify,
                  "Check every answer against brute force / the planted optimum");

    CLI::App* bench = app.add_subcommand("bench", "Aggregate statistics per (n, driver)");
    add_common_flags(bench, opt.bench);
    bench->add_flag("--verify", opt.bench.verify,
                    "Also verify every answer while benchmarking");

    CLI::App* verify = app.add_subcommand("verify", "Run the instrumented invariant suite");
    {
        const std::map<std::string, psearch::ProblemKind> problems{
            {"median-lines", psearch::ProblemKind::MedianLines},
            {"planted", psearch::ProblemKind::Planted}};
        verify->add_option("--problem", opt.verify.problem, "Problem family")
            ->transform(CLI::CheckedTransformer(problems, CLI::ignore_case))
            ->default_str("median-lines");
        verify->add_option("--n", opt.verify.sizes, "Instance size; may be repeated");
        verify->add_option("--trials", opt.verify.trials, "Trials per size")
            ->capture_default_str();
        verify->add_option("--seed", opt.verify.seed, "Base seed")->capture_default_str();
        verify->add_option("--coeff-max", opt.verify.coeff_max, "Coefficient bound")
            ->capture_default_str();
        verify->add_option("--base-threshold", opt.verify.base_threshold,
                           "Override the boxsort base-case threshold");
        verify->add_flag("--inject-weight-fault", opt.verify.inject_weight_fault,
                         "Test hook: apply the weight-rule halving twice (must be caught)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (verify->parsed()) {
            const psearch::VerifyReport report = psearch::run_verify(opt.verify);
            for (const auto& f : report.failures) std::cerr << "violation: " << f << '\n';
            std::cout << (report.ok() ? "OK" : "FAILED") << ": " << report.runs
                      << " instrumented runs, " << report.failures.size() << " violation(s)\n";
            return report.ok() ? kExitOk : kExitFailure;
        }

        const auto records = psearch::run_trials(opt.bench);
        std::ostringstream body;
        if (bench->parsed()) {
            const auto rows = psearch::aggregate(records);
            psearch::write_aggregates(body, rows, opt.bench.format);
        } else {
            psearch::write_trials(body, records, opt.bench.format);
        }
        const int rc = write_output(opt.bench, body.str());
        if (rc != kExitOk) return rc;
        if (opt.bench.verify && !psearch::all_verified(records)) {
            std::cerr << "error: verification failed on at least one trial\n";
            return kExitFailure;
        }
        return kExitOk;
    } catch (const psearch::UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}
