#include "wncs/experiment.hpp"

#include <cmath>
#include <optional>

#include "wncs/errors.hpp"

namespace wncs {

void apply_axis(ExperimentSpec& spec, SweepAxis axis, double value) {
    switch (axis) {
        case SweepAxis::NoiseVariance: {
            const auto n = spec.model.A.rows();
            spec.model.Rw = value * Matrix::Identity(n, n);
            break;
        }
        case SweepAxis::EpsA: spec.links.eps_a = value; break;
        case SweepAxis::EpsB: spec.links.eps_b = value; break;
        case SweepAxis::EpsC: spec.links.eps_c = value; break;
        case SweepAxis::CostB: spec.costs.c_b = value; break;
        case SweepAxis::CostMax: spec.costs.c_max = value; break;
        case SweepAxis::Theta: spec.control.theta = value; break;
        case SweepAxis::Retransmission: {
            if (value < 1.0 || value != std::floor(value))
                throw ConfigError("retransmission values are n_max and must be integers >= 1");
            spec.control.n_max = static_cast<int>(value);
            break;
        }
    }
}

bool axis_changes_schedule(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::NoiseVariance:
        case SweepAxis::EpsA:
        case SweepAxis::EpsB:
        case SweepAxis::CostB:
        case SweepAxis::CostMax: return true;
        case SweepAxis::EpsC:
        case SweepAxis::Theta:
        case SweepAxis::Retransmission: return false;
    }
    return true;
}

std::vector<ResultRow> sweep(const ExperimentSpec& spec, const SweepSpec& sw) {
    spec.validate();
    if (sw.values.empty()) throw ArgumentError("sweep '" + sw.name + "' has no values");
    const auto runs = sw.runs.empty() ? spec.effective_runs() : sw.runs;
    bool uses_gsc = false;
    for (const auto& r : runs) uses_gsc = uses_gsc || r.policy == PolicyKind::Gsc;

    std::optional<DeterministicPolicy> shared;
    if (uses_gsc && !axis_changes_schedule(sw.axis)) shared = solve(spec).bisection.feasible;

    std::vector<ResultRow> rows;
    const std::string axis_name(to_string(sw.axis));
    for (double value : sw.values) {
        ExperimentSpec point = spec;
        apply_axis(point, sw.axis, value);
        point.validate();
        std::optional<DeterministicPolicy> table = shared;
        if (uses_gsc && !table) table = solve(point).bisection.feasible;
        for (const auto& r : runs) rows.push_back(run_point(point, r, table ? &*table : nullptr, axis_name, value));
    }
    return rows;
}

}  // namespace wncs
