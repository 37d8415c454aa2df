#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "wncs/mdp.hpp"

namespace wncs {

/// What a scheduler can see at the start of a slot.
struct SchedulerObservation {
    int delta = 1;          ///< AoI of the plant sensor at the controller
    int upsilon = 1;        ///< joint context label, see quality_indicator
    std::int64_t slot = 1;  ///< 1-based slot number
    int delta_context = 1;  ///< AoI of the context sensor
};

enum class PolicyKind { Gsc, RoundRobin, RandomSelection, AoiAware, AoiiAware };

PolicyKind parse_policy_kind(std::string_view name);
std::string_view to_string(PolicyKind kind);

Action decide_gsc(const DeterministicPolicy& table, const SchedulerObservation& obs);
/// Odd slots send the plant sample, even slots the context sample.
Action decide_round_robin(const SchedulerObservation& obs);
/// Fair coin between the two sensors.
Action decide_random(double uniform_draw);
/// Plant sample once its age passes preset_a, else the context sample once
/// its age passes preset_b, else idle.
Action decide_aoi(const SchedulerObservation& obs, int preset_a, int preset_b);
/// Context sample whenever the controller's context estimate is wrong
/// (upsilon 2 or 3), else the plant sample once its age passes preset_a.
Action decide_aoii(const SchedulerObservation& obs, int preset_a);

struct SchedulerSpec {
    PolicyKind kind = PolicyKind::Gsc;
    int preset_a = 2;
    int preset_b = 2;
    std::optional<DeterministicPolicy> table;  ///< required for Gsc

    void validate() const;
    /// `uniform_draw` is consumed only by the random policy but callers draw
    /// it every slot to keep the streams aligned across policies.
    Action decide(const SchedulerObservation& obs, double uniform_draw) const;
};

}  // namespace wncs
