#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wncs/config.hpp"
#include "wncs/csv.hpp"
#include "wncs/mdp.hpp"
#include "wncs/simulation.hpp"

namespace wncs {

SchedulingSolution solve(const ExperimentSpec& spec);

/// `gsc_table` is required when run.policy is gsc.
SimConfig make_sim_config(const ExperimentSpec& spec, const RunSpec& run, const DeterministicPolicy* gsc_table);

/// Averages spec.replications paired replications of one run.
ResultRow run_point(const ExperimentSpec& spec, const RunSpec& run, const DeterministicPolicy* gsc_table,
                    const std::string& axis = "none", double axis_value = 0.0);

/// One row per effective run.
std::vector<ResultRow> simulate(const ExperimentSpec& spec);

/// The four benchmarks followed by gsc, gsc+cae, gsc+cae+proactive and gsc+cae+crc.
std::vector<RunSpec> table3_runs();
std::vector<ResultRow> table3(const ExperimentSpec& spec);

/// Sets one axis value on a copy of the experiment.
void apply_axis(ExperimentSpec& spec, SweepAxis axis, double value);
/// True when the axis changes the scheduling problem, so gsc must be re-solved.
bool axis_changes_schedule(SweepAxis axis);

/// One row per (value, run). Every point uses the same seed schedule.
std::vector<ResultRow> sweep(const ExperimentSpec& spec, const SweepSpec& sweep);

}  // namespace wncs
