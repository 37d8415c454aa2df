#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "wncs/channel.hpp"
#include "wncs/control.hpp"
#include "wncs/core_model.hpp"
#include "wncs/estimation.hpp"
#include "wncs/mdp.hpp"
#include "wncs/policies.hpp"

namespace wncs {

EstimatorMode parse_estimator_mode(std::string_view name);
std::string_view to_string(EstimatorMode mode);

struct SimConfig {
    SystemModel model = SystemModel::lfc_case_study();
    Thresholds thresholds;
    ContextChain chain;
    LinkParams links;
    CostModel costs;
    ControlConfig control;
    EstimatorMode estimator = EstimatorMode::Baseline;
    SchedulerSpec scheduler;
    std::int64_t slots = 100000;
    std::uint64_t seed = 1;
    std::uint64_t replication = 0;
    bool record_trace = false;

    void validate() const;
};

struct Counters {
    std::int64_t slots = 0;
    std::int64_t sent_plant = 0;
    std::int64_t sent_context = 0;
    std::int64_t delivered_plant = 0;
    std::int64_t delivered_context = 0;
    std::int64_t commands = 0;           ///< fresh triggers
    std::int64_t downlink_attempts = 0;  ///< including retransmissions
    std::int64_t commands_applied = 0;
    std::int64_t violations = 0;
    double squared_error = 0.0;
};

/// Costs are normalised by K (c_a + c_c), the cost of sending and actuating
/// in every slot.
struct Metrics {
    double violation_prob = 0.0;
    double norm_total_cost = 0.0;
    double norm_updating_cost = 0.0;
    double norm_control_cost = 0.0;
    double mse = 0.0;
    double scheduling_cost_per_slot = 0.0;
};

Metrics compute_metrics(const Counters& c, const CostModel& costs, bool charge_per_attempt = true);

struct TraceRecord {
    std::int64_t slot = 0;
    Action action = Action::Idle;
    int delta = 1;
    int upsilon = 1;
    bool triggered = false;
    bool retransmission = false;  ///< the downlink resent a pending command
    bool applied = false;
    bool violation = false;
    double y = 0.0;      ///< C x after the slot
    double y_hat = 0.0;  ///< C x_hat after the slot
};

struct EpisodeResult {
    Counters counters;
    Metrics metrics;
    std::vector<TraceRecord> trace;
};

/// One closed-loop run of cfg.slots slots from x = 0, v = nominal, delta = 1.
/// Throws DivergenceError if the plant or the estimate stops being finite.
EpisodeResult run_episode(const SimConfig& cfg);

/// Element-wise mean.
Metrics average_metrics(std::span<const Metrics> runs);

/// Replications r = 0..n-1 of cfg with streams keyed by (cfg.seed, r).
std::vector<Metrics> run_replications(const SimConfig& cfg, int replications);

/// Expected plant covariance under truncated ARQ with n_max attempts minus
/// that without retransmission, at a controller AoI of delta. Negative output
/// spread means retransmission helps.
Matrix tarq_gap_analytic(const SystemModel& model, double eps_c, int n_max, int delta);

}  // namespace wncs
