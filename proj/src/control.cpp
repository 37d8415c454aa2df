#include "wncs/control.hpp"

#include <cmath>
#include <string>

#include "wncs/errors.hpp"

namespace wncs {

void ControlConfig::validate() const {
    // Checked for every mode so a bad value fails at load time, not at the first CRC sweep.
    if (!(theta > 0.0 && theta < 1.0)) {
        throw ConfigError("control.theta: theta ∈ (0,1) required, got " + std::to_string(theta));
    }
    TarqConfig{n_max}.validate();
}

TriggerMode parse_trigger_mode(std::string_view name) {
    if (name == "reactive") return TriggerMode::Reactive;
    if (name == "proactive" || name == "pc") return TriggerMode::Proactive;
    if (name == "crc" || name == "conservative") return TriggerMode::ConservativeReactive;
    throw ConfigError("unknown control mode '" + std::string(name) + "' (expected reactive, proactive, crc)");
}

std::string_view to_string(TriggerMode mode) {
    switch (mode) {
        case TriggerMode::Reactive: return "reactive";
        case TriggerMode::Proactive: return "proactive";
        case TriggerMode::ConservativeReactive: return "crc";
    }
    return "?";
}

Actuation parse_actuation(std::string_view name) {
    if (name == "ideal") return Actuation::IdealCancellation;
    if (name == "pinv") return Actuation::PseudoInverseGain;
    throw ConfigError("unknown actuation '" + std::string(name) + "' (expected ideal, pinv)");
}

std::string_view to_string(Actuation a) {
    return a == Actuation::IdealCancellation ? "ideal" : "pinv";
}

bool trigger_reactive(const Thresholds& th, const SystemModel& model, const Vector& x_hat, Context v_hat) {
    return std::abs(model.C.dot(x_hat)) > th.for_context(v_hat);
}

bool trigger_proactive(const Thresholds& th, const SystemModel& model, const Vector& x_hat_next, Context v_hat) {
    return std::abs(model.C.dot(x_hat_next)) > th.for_context(v_hat);
}

bool trigger_crc(const Thresholds& th, const SystemModel& model, const Vector& x_hat, Context v_hat, double theta) {
    if (!(theta > 0.0 && theta < 1.0)) {
        throw ConfigError("trigger_crc: theta must lie in (0, 1)");
    }
    return std::abs(model.C.dot(x_hat)) > theta * th.for_context(v_hat);
}

bool should_trigger(const ControlConfig& cfg, const Thresholds& th, const SystemModel& model, const Vector& x_hat,
                    Context v_hat) {
    switch (cfg.mode) {
        case TriggerMode::Reactive: return trigger_reactive(th, model, x_hat, v_hat);
        case TriggerMode::Proactive: return trigger_proactive(th, model, model.A * x_hat, v_hat);
        case TriggerMode::ConservativeReactive: return trigger_crc(th, model, x_hat, v_hat, cfg.theta);
    }
    return false;
}

Matrix control_gain(const SystemModel& model) {
    const Matrix pinv = model.B.completeOrthogonalDecomposition().pseudoInverse();
    return -pinv * model.A;
}

// Both actuation modes carry the same payload; they differ in how the
// actuator realises it (see actuation_effect).
ControlCommand make_command(const SystemModel& model, const Vector& x_hat, Actuation /*mode*/) {
    return make_command(control_gain(model), x_hat);
}

ControlCommand make_command(const Matrix& gain, const Vector& x_hat) { return ControlCommand{x_hat, gain * x_hat}; }

Vector actuation_effect(const SystemModel& model, const ControlCommand& cmd, Actuation mode) {
    if (mode == Actuation::IdealCancellation) {
        return -(model.A * cmd.x_hat);
    }
    return model.B * cmd.u;
}

PlantState apply_actuation(const SystemModel& model, const PlantState& state, const std::optional<ControlCommand>& cmd,
                           const Vector& w, Actuation mode) {
    Vector next = model.A * state.x + w;
    if (cmd) {
        next += actuation_effect(model, *cmd, mode);
    }
    return PlantState{std::move(next), state.k + 1};
}

}  // namespace wncs
