#include "wncs/experiment.hpp"

#include "wncs/errors.hpp"

namespace wncs {

SchedulingSolution solve(const ExperimentSpec& spec) {
    spec.validate();
    return solve_scheduling(spec.model, spec.thresholds, spec.links, spec.chain, spec.costs, spec.solver);
}

SimConfig make_sim_config(const ExperimentSpec& spec, const RunSpec& run, const DeterministicPolicy* gsc_table) {
    SimConfig cfg;
    cfg.model = spec.model;
    cfg.thresholds = spec.thresholds;
    cfg.chain = spec.chain;
    cfg.links = spec.links;
    cfg.costs = spec.costs;
    cfg.control = spec.control;
    cfg.control.mode = run.control;
    cfg.estimator = run.estimator;
    cfg.scheduler.kind = run.policy;
    cfg.scheduler.preset_a = spec.aoi_preset_a;
    cfg.scheduler.preset_b = spec.aoi_preset_b;
    if (run.policy == PolicyKind::Gsc) {
        if (!gsc_table) throw ArgumentError("gsc run needs a solved policy table");
        cfg.scheduler.table = *gsc_table;
    }
    cfg.slots = spec.slots;
    cfg.seed = spec.seed;
    return cfg;
}

ResultRow run_point(const ExperimentSpec& spec, const RunSpec& run, const DeterministicPolicy* gsc_table,
                    const std::string& axis, double axis_value) {
    const SimConfig cfg = make_sim_config(spec, run, gsc_table);
    const auto runs = run_replications(cfg, spec.replications);
    ResultRow row;
    row.policy = std::string(to_string(run.policy));
    row.estimator = std::string(to_string(run.estimator));
    row.control_mode = std::string(to_string(run.control));
    row.axis = axis;
    row.axis_value = axis_value;
    row.seed = spec.seed;
    row.K = spec.slots;
    row.metrics = average_metrics(runs);
    return row;
}

namespace {

bool needs_table(const std::vector<RunSpec>& runs) {
    for (const auto& r : runs)
        if (r.policy == PolicyKind::Gsc) return true;
    return false;
}

std::vector<ResultRow> run_all(const ExperimentSpec& spec, const std::vector<RunSpec>& runs) {
    std::optional<DeterministicPolicy> table;
    if (needs_table(runs)) table = solve(spec).bisection.feasible;
    std::vector<ResultRow> rows;
    for (const auto& r : runs) rows.push_back(run_point(spec, r, table ? &*table : nullptr));
    return rows;
}

}  // namespace

std::vector<ResultRow> simulate(const ExperimentSpec& spec) {
    spec.validate();
    return run_all(spec, spec.effective_runs());
}

std::vector<RunSpec> table3_runs() {
    using E = EstimatorMode;
    using T = TriggerMode;
    return {
        {PolicyKind::RandomSelection, E::Baseline, T::Reactive},
        {PolicyKind::RoundRobin, E::Baseline, T::Reactive},
        {PolicyKind::AoiAware, E::Baseline, T::Reactive},
        {PolicyKind::AoiiAware, E::Baseline, T::Reactive},
        {PolicyKind::Gsc, E::Baseline, T::Reactive},
        {PolicyKind::Gsc, E::ControlAware, T::Reactive},
        {PolicyKind::Gsc, E::ControlAware, T::Proactive},
        {PolicyKind::Gsc, E::ControlAware, T::ConservativeReactive},
    };
}

std::vector<ResultRow> table3(const ExperimentSpec& spec) {
    spec.validate();
    return run_all(spec, table3_runs());
}

}  // namespace wncs
