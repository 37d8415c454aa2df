#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "wncs/config.hpp"
#include "wncs/csv.hpp"
#include "wncs/errors.hpp"
#include "wncs/experiment.hpp"
#include "wncs/policy_table.hpp"

namespace fs = std::filesystem;

struct Options {
    std::string config;
    std::string variant;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::optional<std::int64_t> slots;
    std::string policy;
    bool quiet = false;
};

static wncs::ExperimentSpec load(const Options& opt) {
    wncs::ExperimentSpec spec = opt.config.empty() ? wncs::parse_config("", "<defaults>", opt.variant)
                                                    : wncs::load_config(opt.config, opt.variant);
    if (!opt.out.empty()) spec.out_dir = opt.out;
    if (opt.seed) spec.seed = *opt.seed;
    if (opt.slots) spec.slots = *opt.slots;
    if (!opt.policy.empty()) {
        spec.policy = wncs::parse_policy_kind(opt.policy);
        spec.runs.clear();
    }
    spec.validate();
    if (const auto warning = spec.links.stability_warning(spec.model)) std::cerr << "wncs: warning: " << *warning << "\n";
    return spec;
}

static void print_rows(const std::vector<wncs::ResultRow>& rows) {
    std::printf("%-5s %-9s %-9s %-14s %10s %10s %10s %10s\n", "pol", "est", "ctrl", "axis", "value", "viol", "total",
                "update");
    for (const auto& r : rows)
        std::printf("%-5s %-9s %-9s %-14s %10.4g %9.3f%% %10.4f %10.4f\n", r.policy.c_str(), r.estimator.c_str(),
                    r.control_mode.c_str(), r.axis.c_str(), r.axis_value, 100.0 * r.metrics.violation_prob,
                    r.metrics.norm_total_cost, r.metrics.norm_updating_cost);
}

static int cmd_solve(const Options& opt) {
    const auto spec = load(opt);
    const auto sol = wncs::solve(spec);
    const auto& b = sol.bisection;
    const fs::path path = spec.out_dir / "policy.csv";
    std::ostringstream table;
    wncs::write_policy_table(table, b.feasible);
    wncs::write_file_atomic(path, table.str());
    if (!opt.quiet) {
        std::printf("delta_lo=%d delta_hi=%d delta_thr=%d states=%d\n", sol.truncation.delta_lo, sol.truncation.delta_hi,
                    sol.truncation.delta_thr, 4 * sol.truncation.delta_thr);
        std::printf("lambda=%.6g violation=%.6g scheduling_cost=%.6g (budget %.6g)\n", b.lambda,
                    b.feasible_eval.violation, b.feasible_eval.scheduling_cost, spec.costs.c_max);
        std::printf("wrote %s\n", path.string().c_str());
    }
    return 0;
}

static int cmd_simulate(const Options& opt) {
    const auto spec = load(opt);
    const auto rows = wncs::simulate(spec);
    const fs::path path = spec.out_dir / "simulate.csv";
    wncs::write_results_csv(path, rows);
    if (!opt.quiet) {
        print_rows(rows);
        std::printf("wrote %s\n", path.string().c_str());
    }
    return 0;
}

static int cmd_sweep(const Options& opt) {
    const auto spec = load(opt);
    if (spec.sweeps.empty()) throw wncs::ConfigError("the config defines no sweeps");
    for (const auto& sw : spec.sweeps) {
        const auto rows = wncs::sweep(spec, sw);
        const fs::path path = spec.out_dir / ("sweep_" + sw.name + ".csv");
        wncs::write_results_csv(path, rows);
        if (!opt.quiet) {
            print_rows(rows);
            std::printf("wrote %s\n", path.string().c_str());
        }
    }
    return 0;
}

static int cmd_table3(const Options& opt) {
    const auto spec = load(opt);
    const auto rows = wncs::table3(spec);
    const fs::path path = spec.out_dir / "table3.csv";
    wncs::write_results_csv(path, rows);
    if (!opt.quiet) {
        print_rows(rows);
        std::printf("wrote %s\n", path.string().c_str());
    }
    return 0;
}

int main(int argc, char** argv) {
    CLI::App app{"Goal-oriented scheduling and control for a two-sensor wireless control loop"};
    app.require_subcommand(1);
    Options opt;
    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", opt.config, "experiment config (JSON); defaults apply when omitted");
        sub->add_option("--variant", opt.variant, "named entry under the config's variants");
        sub->add_option("--out", opt.out, "output directory");
        sub->add_option("--seed", opt.seed, "base seed, overrides the config");
        sub->add_option("--slots", opt.slots, "slots per replication, overrides the config");
        sub->add_option("--policy", opt.policy, "gsc, rr, rs, aoi or aoii");
        sub->add_flag("--quiet", opt.quiet, "no summary on stdout");
    };
    auto* solve = app.add_subcommand("solve", "solve the scheduling problem and write policy.csv");
    auto* simulate = app.add_subcommand("simulate", "run the configured runs and write simulate.csv");
    auto* sweep = app.add_subcommand("sweep", "run every configured sweep and write sweep_<name>.csv");
    auto* table3 = app.add_subcommand("table3", "benchmarks against the proposed scheme variants");
    for (auto* sub : {solve, simulate, sweep, table3}) add_common(sub);

    CLI11_PARSE(app, argc, argv);
    try {
        if (*solve) return cmd_solve(opt);
        if (*simulate) return cmd_simulate(opt);
        if (*sweep) return cmd_sweep(opt);
        if (*table3) return cmd_table3(opt);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "wncs: %s\n", e.what());
        return 1;
    }
    return 1;
}
