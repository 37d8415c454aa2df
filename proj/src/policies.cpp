#include "wncs/policies.hpp"

#include <string>

#include "wncs/errors.hpp"

namespace wncs {

PolicyKind parse_policy_kind(std::string_view name) {
    if (name == "gsc") return PolicyKind::Gsc;
    if (name == "rr") return PolicyKind::RoundRobin;
    if (name == "rs") return PolicyKind::RandomSelection;
    if (name == "aoi") return PolicyKind::AoiAware;
    if (name == "aoii") return PolicyKind::AoiiAware;
    throw ConfigError("unknown policy '" + std::string(name) + "' (expected gsc, rr, rs, aoi or aoii)");
}

std::string_view to_string(PolicyKind kind) {
    switch (kind) {
        case PolicyKind::Gsc: return "gsc";
        case PolicyKind::RoundRobin: return "rr";
        case PolicyKind::RandomSelection: return "rs";
        case PolicyKind::AoiAware: return "aoi";
        case PolicyKind::AoiiAware: return "aoii";
    }
    return "?";
}

Action decide_gsc(const DeterministicPolicy& table, const SchedulerObservation& obs) {
    return table.at(obs.delta, obs.upsilon);
}

Action decide_round_robin(const SchedulerObservation& obs) {
    return obs.slot % 2 == 1 ? Action::SendPlant : Action::SendContext;
}

Action decide_random(double uniform_draw) { return uniform_draw < 0.5 ? Action::SendPlant : Action::SendContext; }

Action decide_aoi(const SchedulerObservation& obs, int preset_a, int preset_b) {
    if (obs.delta > preset_a) return Action::SendPlant;
    if (obs.delta_context > preset_b) return Action::SendContext;
    return Action::Idle;
}

Action decide_aoii(const SchedulerObservation& obs, int preset_a) {
    if (obs.upsilon == 2 || obs.upsilon == 3) return Action::SendContext;
    if (obs.delta > preset_a) return Action::SendPlant;
    return Action::Idle;
}

void SchedulerSpec::validate() const {
    if (preset_a < 1 || preset_b < 1) throw ConfigError("AoI presets must be >= 1");
    if (kind == PolicyKind::Gsc && !table) throw ConfigError("the gsc scheduler needs a policy table");
}

Action SchedulerSpec::decide(const SchedulerObservation& obs, double uniform_draw) const {
    switch (kind) {
        case PolicyKind::Gsc: return decide_gsc(*table, obs);
        case PolicyKind::RoundRobin: return decide_round_robin(obs);
        case PolicyKind::RandomSelection: return decide_random(uniform_draw);
        case PolicyKind::AoiAware: return decide_aoi(obs, preset_a, preset_b);
        case PolicyKind::AoiiAware: return decide_aoii(obs, preset_a);
    }
    return Action::Idle;
}

}  // namespace wncs
