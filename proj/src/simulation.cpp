#include "wncs/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>
#include <string>

#include "wncs/errors.hpp"

namespace wncs {

EstimatorMode parse_estimator_mode(std::string_view name) {
    if (name == "baseline") return EstimatorMode::Baseline;
    if (name == "cae" || name == "control_aware") return EstimatorMode::ControlAware;
    throw ConfigError("unknown estimator '" + std::string(name) + "' (expected baseline or cae)");
}

std::string_view to_string(EstimatorMode mode) {
    return mode == EstimatorMode::Baseline ? "baseline" : "cae";
}

void SimConfig::validate() const {
    model.validate();
    thresholds.validate();
    chain.validate();
    links.validate();
    costs.validate();
    control.validate();
    scheduler.validate();
    if (slots < 0) throw ConfigError("slots must be non-negative");
}

Metrics compute_metrics(const Counters& c, const CostModel& costs, bool charge_per_attempt) {
    if (c.slots <= 0) throw ArgumentError("metrics need at least one slot");
    const double K = static_cast<double>(c.slots);
    const double denom = K * (costs.c_a + costs.c_c);
    const double updating = static_cast<double>(c.sent_plant) * costs.c_a + static_cast<double>(c.sent_context) * costs.c_b;
    const double control =
        static_cast<double>(charge_per_attempt ? c.downlink_attempts : c.commands) * costs.c_c;
    Metrics m;
    m.violation_prob = static_cast<double>(c.violations) / K;
    m.norm_updating_cost = updating / denom;
    m.norm_control_cost = control / denom;
    m.norm_total_cost = m.norm_updating_cost + m.norm_control_cost;
    m.mse = c.squared_error / K;
    m.scheduling_cost_per_slot = updating / K;
    return m;
}

EpisodeResult run_episode(const SimConfig& cfg) {
    cfg.validate();
    const SystemModel& model = cfg.model;
    const NoiseSampler noise(model);
    RandomStream noise_rng(cfg.seed, cfg.replication, StreamId::ProcessNoise);
    RandomStream context_rng(cfg.seed, cfg.replication, StreamId::Context);
    RandomStream uplink_rng(cfg.seed, cfg.replication, StreamId::Uplink);
    RandomStream downlink_rng(cfg.seed, cfg.replication, StreamId::Downlink);
    RandomStream scheduler_rng(cfg.seed, cfg.replication, StreamId::Scheduler);

    const Matrix gain = control_gain(model);
    const TarqConfig tarq_cfg{cfg.control.n_max};
    TarqState tarq;
    Uplink uplink;

    Vector x = Vector::Zero(model.state_dim());
    Context v = Context::Nominal;
    EstimatorState est = EstimatorState::initial(model.state_dim());
    int delta_context = 1;

    EpisodeResult out;
    Counters& n = out.counters;
    if (cfg.record_trace) out.trace.reserve(static_cast<std::size_t>(cfg.slots));

    for (std::int64_t k = 0; k < cfg.slots; ++k) {
        const Vector w = noise.sample(noise_rng);
        const double context_draw = context_rng.uniform();
        const double uplink_draw = uplink_rng.uniform();
        const double downlink_draw = downlink_rng.uniform();
        const double scheduler_draw = scheduler_rng.uniform();

        const int upsilon = quality_indicator(v, est.v_hat);
        const bool in_burst = tarq.retransmitting();
        const int delta_now = est.delta;
        Action action = Action::Idle;
        if (!in_burst)
            action = cfg.scheduler.decide({est.delta, upsilon, k + 1, delta_context}, scheduler_draw);

        if (action == Action::SendPlant) {
            ++n.sent_plant;
            uplink.enqueue(x, k, transmit_with_draw(cfg.links.eps_a, uplink_draw));
        } else if (action == Action::SendContext) {
            ++n.sent_context;
            uplink.enqueue(v, k, transmit_with_draw(cfg.links.eps_b, uplink_draw));
        }

        // A command still in its retransmission burst blocks new triggers.
        bool triggered = in_burst;
        std::optional<ControlCommand> fresh;
        if (!triggered && should_trigger(cfg.control, cfg.thresholds, model, est.x_hat, est.v_hat)) {
            triggered = true;
            fresh = make_command(gain, est.x_hat);
            ++n.commands;
        }
        TarqOutcome sent;
        if (triggered) {
            sent = tarq_step(tarq_cfg, tarq, std::move(fresh), transmit_with_draw(cfg.links.eps_c, downlink_draw));
            ++n.downlink_attempts;
            if (sent.delivered) ++n.commands_applied;
        }

        const PlantState next = apply_actuation(model, {x, k}, sent.delivered, w, cfg.control.actuation);
        const Context v_next = context_step(cfg.chain, v, context_draw);

        std::optional<Vector> seen_x;
        std::optional<Context> seen_v;
        const UplinkObservation obs = uplink.deliver(k + 1);
        if (obs.payload) {
            if (const auto* px = std::get_if<Vector>(&*obs.payload)) {
                seen_x = *px;
                ++n.delivered_plant;
            } else {
                seen_v = std::get<Context>(*obs.payload);
                ++n.delivered_context;
            }
        }

        Vector x_hat_next;
        if (cfg.estimator == EstimatorMode::Baseline) {
            const Vector assumed = cfg.control.actuation == Actuation::IdealCancellation
                                       ? Vector(-model.A * est.x_hat)
                                       : Vector(model.B * (gain * est.x_hat));
            x_hat_next = estimate_baseline(model, est.x_hat, seen_x, assumed);
        } else {
            x_hat_next = estimate_control_aware(model, est.x_hat, seen_x, triggered);
        }
        est.delta = update_aoi(est.delta, seen_x.has_value());
        delta_context = update_aoi(delta_context, seen_v.has_value());
        est.v_hat = update_context_estimate(est.v_hat, seen_v);
        est.x_hat = std::move(x_hat_next);
        x = next.x;
        v = v_next;

        if (!x.allFinite() || !est.x_hat.allFinite())
            throw DivergenceError("state became non-finite at slot " + std::to_string(k + 1), k + 1);
        n.squared_error += (x - est.x_hat).squaredNorm();
        const bool violated = violation_indicator(cfg.thresholds, model, x, v);
        if (violated) ++n.violations;
        ++n.slots;

        if (cfg.record_trace)
            out.trace.push_back({k + 1, action, delta_now, upsilon, triggered, in_burst, sent.delivered.has_value(), violated,
                                 (model.C * x)(0), (model.C * est.x_hat)(0)});
    }
    if (n.slots > 0) out.metrics = compute_metrics(n, cfg.costs, cfg.control.charge_per_attempt);
    return out;
}

Metrics average_metrics(std::span<const Metrics> runs) {
    if (runs.empty()) throw ArgumentError("nothing to average");
    Metrics m;
    for (const auto& r : runs) {
        m.violation_prob += r.violation_prob;
        m.norm_total_cost += r.norm_total_cost;
        m.norm_updating_cost += r.norm_updating_cost;
        m.norm_control_cost += r.norm_control_cost;
        m.mse += r.mse;
        m.scheduling_cost_per_slot += r.scheduling_cost_per_slot;
    }
    const double k = static_cast<double>(runs.size());
    m.violation_prob /= k;
    m.norm_total_cost /= k;
    m.norm_updating_cost /= k;
    m.norm_control_cost /= k;
    m.mse /= k;
    m.scheduling_cost_per_slot /= k;
    return m;
}

std::vector<Metrics> run_replications(const SimConfig& cfg, int replications) {
    if (replications < 1) throw ArgumentError("need at least one replication");
    cfg.validate();
    std::vector<Metrics> out(static_cast<std::size_t>(replications));
    std::vector<std::exception_ptr> errors(out.size());
    std::atomic<int> next{0};
    // Each replication owns its streams, so results do not depend on which
    // worker ran it.
    const auto work = [&] {
        SimConfig run = cfg;
        run.record_trace = false;
        for (int r = next++; r < replications; r = next++) {
            run.replication = static_cast<std::uint64_t>(r);
            try {
                out[static_cast<std::size_t>(r)] = run_episode(run).metrics;
            } catch (...) {
                errors[static_cast<std::size_t>(r)] = std::current_exception();
            }
        }
    };
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned workers = std::min(hw, static_cast<unsigned>(replications));
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < workers; ++i) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

Matrix tarq_gap_analytic(const SystemModel& model, double eps_c, int n_max, int delta) {
    if (!(eps_c >= 0.0 && eps_c < 1.0)) throw ArgumentError("eps_c must lie in [0, 1)");
    if (n_max < 1 || delta < 1) throw ArgumentError("n_max and delta must be >= 1");
    const Matrix& A = model.A;
    const double eps_n = std::pow(eps_c, n_max);
    const Matrix theta = error_covariance(model, delta + n_max);
    const Matrix phi_late = plant_covariance_after_control(model, delta + n_max);
    const Matrix phi_now = plant_covariance_after_control(model, delta);
    Matrix a_pow = Matrix::Identity(A.rows(), A.cols());
    for (int i = 0; i < n_max + 1; ++i) a_pow = a_pow * A;
    const Matrix lead = a_pow - A * A;
    return (eps_c - eps_n) * (A * theta * A.transpose() - A * phi_late * A.transpose()) +
           (1.0 - eps_n) * lead * phi_now * lead.transpose();
}

}  // namespace wncs
