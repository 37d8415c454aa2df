#include "wncs/channel.hpp"

#include <algorithm>

#include "wncs/errors.hpp"

namespace wncs {

void LinkParams::validate() const {
    auto check = [](double eps, const char* key) {
        if (!(eps >= 0.0 && eps < 1.0)) {
            throw ConfigError(std::string("links.") + key + " must lie in [0, 1)");
        }
    };
    check(eps_a, "eps_a");
    check(eps_b, "eps_b");
    check(eps_c, "eps_c");
}

std::optional<std::string> LinkParams::stability_warning(const SystemModel& model) const {
    const double rho = spectral_radius(model.A);
    const double worst = std::max({eps_a, eps_b, eps_c});
    if (rho > 0.0 && worst >= 1.0 / (rho * rho)) {
        return "max packet error probability " + std::to_string(worst) + " >= 1/rho(A)^2 = " +
               std::to_string(1.0 / (rho * rho)) + "; a stabilising stationary policy is not guaranteed";
    }
    return std::nullopt;
}

bool transmit(double eps, RandomStream& rng) { return transmit_with_draw(eps, rng.uniform()); }

void Uplink::enqueue(UplinkPayload payload, std::int64_t slot, bool success) {
    if (in_flight_) {
        throw ContractViolation("uplink: a packet is already in flight (one transmission per slot)");
    }
    in_flight_ = UplinkPacket{std::move(payload), slot, success};
}

UplinkObservation Uplink::deliver(std::int64_t slot) {
    UplinkObservation out;
    if (!in_flight_ || in_flight_->sent_at + 1 != slot) {
        return out;
    }
    if (in_flight_->success) {
        out.payload = std::move(in_flight_->payload);
    } else {
        out.nack = true;
    }
    in_flight_.reset();
    return out;
}

void TarqConfig::validate() const {
    if (n_max < 1) {
        throw ConfigError("control.n_max must be >= 1");
    }
}

TarqOutcome tarq_step(const TarqConfig& cfg, TarqState& state, std::optional<ControlCommand> new_command,
                      bool link_success) {
    if (state.pending_command && new_command) {
        throw ContractViolation("tarq_step: new command issued while a retransmission is pending");
    }
    TarqOutcome out;
    std::optional<ControlCommand> command = state.pending_command ? std::move(state.pending_command)
                                                                  : std::move(new_command);
    state.pending_command.reset();
    if (!command) {
        state.attempts_used = 0;
        return out;
    }
    out.attempted = true;
    const int attempts = state.attempts_used + 1;
    if (link_success) {
        state.attempts_used = 0;
        out.delivered = std::move(command);
    } else if (attempts >= cfg.n_max) {
        state.attempts_used = 0;
    } else {
        state.pending_command = std::move(command);
        state.attempts_used = attempts;
    }
    return out;
}

TarqOutcome tarq_step(const TarqConfig& cfg, TarqState& state, std::optional<ControlCommand> new_command,
                      double eps_c, RandomStream& rng) {
    return tarq_step(cfg, state, std::move(new_command), transmit(eps_c, rng));
}

}  // namespace wncs
