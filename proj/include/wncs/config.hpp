#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "wncs/channel.hpp"
#include "wncs/control.hpp"
#include "wncs/core_model.hpp"
#include "wncs/estimation.hpp"
#include "wncs/mdp.hpp"
#include "wncs/policies.hpp"

namespace wncs {

/// One (policy, estimator, control mode) combination.
struct RunSpec {
    PolicyKind policy = PolicyKind::Gsc;
    EstimatorMode estimator = EstimatorMode::ControlAware;
    TriggerMode control = TriggerMode::ConservativeReactive;
};

enum class SweepAxis { NoiseVariance, EpsA, EpsB, EpsC, CostB, CostMax, Theta, Retransmission };

SweepAxis parse_sweep_axis(std::string_view name);
std::string_view to_string(SweepAxis axis);

struct SweepSpec {
    std::string name;
    SweepAxis axis = SweepAxis::Theta;
    std::vector<double> values;
    std::vector<RunSpec> runs;  ///< empty means the experiment's runs
};

struct ExperimentSpec {
    std::string scenario = "table2";
    std::string variant;  ///< empty for the base scenario

    SystemModel model = SystemModel::lfc_case_study();
    ContextChain chain;
    Thresholds thresholds;
    LinkParams links;
    CostModel costs;
    ControlConfig control{TriggerMode::ConservativeReactive};
    SolverConfig solver;

    EstimatorMode estimator = EstimatorMode::ControlAware;
    PolicyKind policy = PolicyKind::Gsc;
    int aoi_preset_a = 2;
    int aoi_preset_b = 2;

    std::int64_t slots = 100000;
    std::uint64_t seed = 1;
    int replications = 1;

    std::filesystem::path out_dir = "out";
    std::vector<RunSpec> runs;  ///< empty means the single run given by policy/estimator/control
    std::vector<SweepSpec> sweeps;

    /// Runs every module's validation; throws ConfigError.
    void validate() const;
    std::vector<RunSpec> effective_runs() const;
};

/// Parses a JSON document. Omitted keys keep the defaults above, unknown keys
/// are rejected, and a top-level "variant" overlays variants.<name> first.
/// `source` is used in error messages.
/// A non-empty `variant` selects that entry of "variants" in place of the
/// document's own "variant" key.
ExperimentSpec parse_config(std::string_view text, std::string_view source = "<config>",
                            const std::string& variant = "");
ExperimentSpec load_config(const std::filesystem::path& path, const std::string& variant = "");

}  // namespace wncs
