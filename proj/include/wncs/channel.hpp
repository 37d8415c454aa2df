#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include "wncs/core_model.hpp"
#include "wncs/linalg.hpp"
#include "wncs/rng.hpp"

namespace wncs {

/// Packet error probabilities: eps_a (plant sensor uplink), eps_b (context
/// sensor uplink), eps_c (controller-actuator downlink).
struct LinkParams {
    double eps_a = 1e-3;
    double eps_b = 1e-3;
    double eps_c = 1e-3;

    void validate() const;
    /// Non-empty when max(eps) >= 1 / rho(A)^2, where the existence of a
    /// stabilising stationary policy is no longer guaranteed.
    std::optional<std::string> stability_warning(const SystemModel& model) const;
};

/// One erasure-channel use: true with probability 1 - eps.
bool transmit(double eps, RandomStream& rng);
inline bool transmit_with_draw(double eps, double uniform_draw) { return uniform_draw >= eps; }

using UplinkPayload = std::variant<Vector, Context>;

struct UplinkPacket {
    UplinkPayload payload;
    std::int64_t sent_at = 0;
    bool success = false;
};

/// What the controller/scheduler observe on the uplink in one slot.
struct UplinkObservation {
    std::optional<UplinkPayload> payload;
    bool nack = false;

    bool delivered() const { return payload.has_value(); }
    bool idle() const { return !payload && !nack; }
};

/// Single-slot-delay uplink: a packet sent at slot k is observed at k + 1,
/// either delivered (ACK) or lost (NACK). At most one packet is in flight.
class Uplink {
public:
    void enqueue(UplinkPayload payload, std::int64_t slot, bool success);
    UplinkObservation deliver(std::int64_t slot);
    bool busy() const { return in_flight_.has_value(); }

private:
    std::optional<UplinkPacket> in_flight_;
};

/// Control payload. It keeps the estimate the command was computed from so a
/// retransmitted command acts on the state seen at trigger time.
struct ControlCommand {
    Vector x_hat;
    Vector u;
};

struct TarqConfig {
    int n_max = 1;
    void validate() const;
};

struct TarqState {
    std::optional<ControlCommand> pending_command;
    int attempts_used = 0;

    bool retransmitting() const { return pending_command.has_value(); }
};

struct TarqOutcome {
    std::optional<ControlCommand> delivered;
    bool attempted = false;
};

/// Truncated ARQ on the downlink. Sends the pending command (or the new one)
/// once; on success clears the state and returns the original payload, on
/// failure keeps it for the next slot until n_max attempts are spent.
TarqOutcome tarq_step(const TarqConfig& cfg, TarqState& state, std::optional<ControlCommand> new_command,
                      bool link_success);
TarqOutcome tarq_step(const TarqConfig& cfg, TarqState& state, std::optional<ControlCommand> new_command,
                      double eps_c, RandomStream& rng);

}  // namespace wncs
