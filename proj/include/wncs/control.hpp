#pragma once

#include <optional>
#include <string_view>

#include "wncs/channel.hpp"
#include "wncs/core_model.hpp"
#include "wncs/linalg.hpp"

namespace wncs {

enum class TriggerMode { Reactive, Proactive, ConservativeReactive };

enum class Actuation {
    /// B u = -A x_hat exactly; the gain G = -A/B read as perfect cancellation.
    IdealCancellation,
    /// u = -pinv(B) A x_hat applied through B.
    PseudoInverseGain,
};

struct ControlConfig {
    TriggerMode mode = TriggerMode::Reactive;
    double theta = 0.5;
    Actuation actuation = Actuation::IdealCancellation;
    int n_max = 1;
    /// Charge c_c for every downlink attempt (including retransmissions)
    /// instead of once per command.
    bool charge_per_attempt = true;

    void validate() const;
};

TriggerMode parse_trigger_mode(std::string_view name);
std::string_view to_string(TriggerMode mode);
Actuation parse_actuation(std::string_view name);
std::string_view to_string(Actuation a);

/// |C x_hat| > zeta_{v_hat}
bool trigger_reactive(const Thresholds& th, const SystemModel& model, const Vector& x_hat, Context v_hat);
/// |C x_hat_next| > zeta_{v_hat}, with x_hat_next = A x_hat and the context
/// predicted by persistence.
bool trigger_proactive(const Thresholds& th, const SystemModel& model, const Vector& x_hat_next, Context v_hat);
/// |C x_hat| > theta * zeta_{v_hat}, theta in (0, 1).
bool trigger_crc(const Thresholds& th, const SystemModel& model, const Vector& x_hat, Context v_hat, double theta);

/// Dispatches on cfg.mode.
bool should_trigger(const ControlConfig& cfg, const Thresholds& th, const SystemModel& model, const Vector& x_hat,
                    Context v_hat);

/// G = -pinv(B) A, the least-squares reading of -A/B.
Matrix control_gain(const SystemModel& model);

ControlCommand make_command(const SystemModel& model, const Vector& x_hat, Actuation mode);
ControlCommand make_command(const Matrix& gain, const Vector& x_hat);

/// The command's effect B u on the next state.
Vector actuation_effect(const SystemModel& model, const ControlCommand& cmd, Actuation mode);

/// x' = A x + B u + w when a command is delivered, A x + w otherwise.
PlantState apply_actuation(const SystemModel& model, const PlantState& state, const std::optional<ControlCommand>& cmd,
                           const Vector& w, Actuation mode = Actuation::IdealCancellation);

}  // namespace wncs
