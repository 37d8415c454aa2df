#include "wncs/mdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/LU>

#include "wncs/errors.hpp"

namespace wncs {

Action action_from_index(int index) {
    if (index < 0 || index >= kNumActions) throw ArgumentError("action index out of range: " + std::to_string(index));
    return static_cast<Action>(index + 1);
}

Action action_from_number(int number) { return action_from_index(number - 1); }

std::string_view to_string(Action a) {
    switch (a) {
        case Action::SendPlant: return "send_plant";
        case Action::SendContext: return "send_context";
        case Action::Idle: return "idle";
    }
    return "?";
}

StateSpace::StateSpace(int delta_thr) : delta_thr_(delta_thr) {
    if (delta_thr < 1) throw ArgumentError("delta_thr must be >= 1");
}

int StateSpace::index(int delta, int upsilon) const {
    if (delta < 1) throw ArgumentError("delta must be >= 1");
    if (upsilon < 1 || upsilon > 4) throw ArgumentError("upsilon must be in 1..4");
    return (std::min(delta, delta_thr_) - 1) * 4 + (upsilon - 1);
}

CmdpState StateSpace::state(int index) const {
    if (index < 0 || index >= size()) throw ArgumentError("state index out of range");
    return {index / 4 + 1, index % 4 + 1};
}

Truncation truncation_threshold(const SystemModel& model, const Thresholds& th, int hard_cap) {
    model.validate();
    th.validate();
    Truncation t;
    // Phi(delta) = Rw + sum_{i=1..delta} A^i Rw (A^i)^T, built incrementally.
    Matrix phi = model.Rw;
    Matrix power = Matrix::Identity(model.state_dim(), model.state_dim());
    for (int delta = 1; delta <= hard_cap; ++delta) {
        power = power * model.A;
        phi += power * model.Rw * power.transpose();
        const double spread = std::sqrt(std::max(0.0, (model.C * phi * model.C.transpose())(0, 0)));
        if (t.delta_context0 == 0 && spread > th.zeta0) t.delta_context0 = delta;
        if (t.delta_context1 == 0 && spread > th.zeta1) t.delta_context1 = delta;
        if (t.delta_context0 != 0 && t.delta_context1 != 0) {
            t.delta_lo = std::min(t.delta_context0, t.delta_context1);
            t.delta_hi = std::max(t.delta_context0, t.delta_context1);
            t.delta_thr = t.delta_hi;
            return t;
        }
    }
    throw ConfigError("no age up to " + std::to_string(hard_cap) +
                      " pushes the output spread past both thresholds; the plant may be too stable or the noise too small");
}

double CostModel::scheduling_cost(Action a) const {
    switch (a) {
        case Action::SendPlant: return c_a;
        case Action::SendContext: return c_b;
        case Action::Idle: return 0.0;
    }
    return 0.0;
}

void CostModel::validate() const {
    for (double c : {c_a, c_b, c_c, c_max})
        if (!std::isfinite(c) || c < 0.0) throw ConfigError("costs must be finite and non-negative");
    if (c_a <= 0.0 || c_b <= 0.0) throw ConfigError("transmission costs must be positive");
}

TransitionModel::TransitionModel(int num_states, int num_actions)
    : states_(num_states), actions_(num_actions),
      p_(static_cast<std::size_t>(num_states) * num_actions * num_states, 0.0) {
    if (num_states < 1 || num_actions < 1) throw ArgumentError("transition model needs at least one state and action");
}

double TransitionModel::max_row_error() const {
    double worst = 0.0;
    for (int s = 0; s < states_; ++s)
        for (int a = 0; a < actions_; ++a) {
            double sum = 0.0;
            for (double p : row(s, a)) sum += p;
            worst = std::max(worst, std::abs(sum - 1.0));
        }
    return worst;
}

double TransitionModel::min_entry() const { return *std::min_element(p_.begin(), p_.end()); }

TransitionModel build_transitions(double eps_a, double eps_b, const ContextChain& chain, int delta_thr) {
    for (double e : {eps_a, eps_b})
        if (!(e >= 0.0 && e < 1.0)) throw ConfigError("erasure probabilities must lie in [0, 1)");
    chain.validate();
    const StateSpace space(delta_thr);
    TransitionModel T(space.size(), kNumActions);
    const auto upsilon = [](int v, int v_hat) { return 1 + 2 * v + v_hat; };

    for (int s = 0; s < space.size(); ++s) {
        const auto [delta, u] = space.state(s);
        const int v = u >= 3 ? 1 : 0;
        const int v_hat = (u == 2 || u == 4) ? 1 : 0;
        const int aged = delta + 1;
        for (const auto& [v_next, pv] : {std::pair{v, chain.p_self}, std::pair{1 - v, chain.p_switch()}}) {
            // Send S_a: age resets on success, the context estimate is untouched.
            T.at(s, 0, space.index(1, upsilon(v_next, v_hat))) += (1.0 - eps_a) * pv;
            T.at(s, 0, space.index(aged, upsilon(v_next, v_hat))) += eps_a * pv;
            // Send S_b: the delivered sample carries the current context.
            T.at(s, 1, space.index(aged, upsilon(v_next, v))) += (1.0 - eps_b) * pv;
            T.at(s, 1, space.index(aged, upsilon(v_next, v_hat))) += eps_b * pv;
            T.at(s, 2, space.index(aged, upsilon(v_next, v_hat))) += pv;
        }
    }
    return T;
}

std::vector<double> build_reward(int delta_lo, int delta_hi, int delta_thr) {
    if (delta_lo < 1 || delta_hi < delta_lo || delta_thr < delta_hi)
        throw ArgumentError("need 1 <= delta_lo <= delta_hi <= delta_thr");
    const StateSpace space(delta_thr);
    std::vector<double> r(static_cast<std::size_t>(space.size()), 0.0);
    for (int s = 0; s < space.size(); ++s) {
        const auto [d, u] = space.state(s);
        const bool hit = d >= delta_hi || (d >= delta_lo && u >= 3) || (d == delta_lo - 1 && u == 3);
        r[static_cast<std::size_t>(s)] = hit ? 1.0 : 0.0;
    }
    return r;
}

Matrix lagrangian_costs(std::span<const double> rs, const CostModel& costs, double lambda) {
    Matrix c(static_cast<Eigen::Index>(rs.size()), kNumActions);
    for (std::size_t s = 0; s < rs.size(); ++s) {
        const auto i = static_cast<Eigen::Index>(s);
        c(i, 0) = rs[s] + lambda * costs.c_a;
        c(i, 1) = rs[s] + lambda * costs.c_b;
        c(i, 2) = rs[s];
    }
    return c;
}

void SolverConfig::validate() const {
    if (!(iota > 0.0)) throw ConfigError("iota must be positive");
    if (!(kappa > 0.0)) throw ConfigError("kappa must be positive");
    if (!(lambda_l >= 0.0) || !(lambda_u > lambda_l)) throw ConfigError("need 0 <= lambda_l < lambda_u");
    if (s_ref < 0) throw ConfigError("s_ref must be a valid state index");
    if (!(aperiodicity > 0.0 && aperiodicity <= 1.0)) throw ConfigError("aperiodicity must lie in (0, 1]");
    if (max_iterations < 1 || max_doublings < 0) throw ConfigError("iteration caps must be positive");
}

namespace {

// Q(s, a) = c(s, a) + tau * sum P V + (1 - tau) V(s). Counts S multiply-adds
// per pair.
void q_values(const TransitionModel& T, const Matrix& c, const std::vector<double>& V, double tau, Matrix& Q,
              std::uint64_t& ops) {
    const int S = T.num_states();
    for (int s = 0; s < S; ++s)
        for (int a = 0; a < T.num_actions(); ++a) {
            const auto row = T.row(s, a);
            double acc = 0.0;
            for (int n = 0; n < S; ++n) acc += row[static_cast<std::size_t>(n)] * V[static_cast<std::size_t>(n)];
            Q(s, a) = c(s, a) + tau * acc + (1.0 - tau) * V[static_cast<std::size_t>(s)];
        }
    ops += static_cast<std::uint64_t>(S) * static_cast<std::uint64_t>(T.num_actions()) * static_cast<std::uint64_t>(S);
}

int argmin_lowest(const Matrix& Q, int s) {
    int best = 0;
    for (int a = 1; a < Q.cols(); ++a) {
        const double tol = 1e-12 * (1.0 + std::abs(Q(s, best)));
        if (Q(s, a) < Q(s, best) - tol) best = a;
    }
    return best;
}

}  // namespace

RviaResult rvia_solve(const TransitionModel& T, const Matrix& stage_costs, const SolverConfig& cfg) {
    cfg.validate();
    const int S = T.num_states();
    if (stage_costs.rows() != S || stage_costs.cols() != T.num_actions())
        throw ArgumentError("stage cost matrix does not match the transition model");
    if (cfg.s_ref >= S) throw ConfigError("s_ref outside the state space");

    RviaResult out;
    std::vector<double> V(static_cast<std::size_t>(S), 0.0);
    std::vector<double> next(V.size());
    std::vector<double> drift(V.size(), std::numeric_limits<double>::infinity());
    Matrix Q(S, T.num_actions());
    double residual = std::numeric_limits<double>::infinity();
    while (true) {
        if (out.iterations >= cfg.max_iterations)
            throw NonConvergenceError("relative value iteration did not converge within " +
                                          std::to_string(cfg.max_iterations) + " sweeps",
                                      residual);
        q_values(T, stage_costs, V, cfg.aperiodicity, Q, out.multiply_adds);
        ++out.iterations;
        const double ref = Q.row(cfg.s_ref).minCoeff();
        residual = 0.0;
        double drift_change = 0.0;
        for (int s = 0; s < S; ++s) {
            const auto i = static_cast<std::size_t>(s);
            next[i] = Q.row(s).minCoeff() - ref;
            const double d = next[i] - V[i];
            residual = std::max(residual, std::abs(d));
            drift_change = std::max(drift_change, std::abs(d - drift[i]));
            drift[i] = d;
        }
        V.swap(next);
        out.gain = ref;
        if (residual < cfg.iota) break;
        // Several closed classes with different gains: the relative values
        // then drift at a constant rate and the span never shrinks. A
        // stationary drift means the greedy policy has settled.
        if (drift_change < cfg.iota * cfg.iota) {
            out.multichain = true;
            break;
        }
    }
    q_values(T, stage_costs, V, cfg.aperiodicity, Q, out.multiply_adds);
    out.greedy.resize(static_cast<std::size_t>(S));
    for (int s = 0; s < S; ++s) out.greedy[static_cast<std::size_t>(s)] = argmin_lowest(Q, s);
    // The transformed problem has the same gain; its relative values are 1/tau
    // times those of the original one.
    for (double& value : V) value *= cfg.aperiodicity;
    out.relative_value = std::move(V);
    out.residual = residual;
    return out;
}

double bellman_residual(const TransitionModel& T, const Matrix& stage_costs, const RviaResult& result) {
    Matrix Q(T.num_states(), T.num_actions());
    std::uint64_t ops = 0;
    q_values(T, stage_costs, result.relative_value, 1.0, Q, ops);
    double worst = 0.0;
    for (int s = 0; s < T.num_states(); ++s)
        worst = std::max(worst, std::abs(result.gain + result.relative_value[static_cast<std::size_t>(s)] -
                                         Q.row(s).minCoeff()));
    return worst;
}

DeterministicPolicy::DeterministicPolicy(StateSpace space, std::vector<Action> actions)
    : space_(space), actions_(std::move(actions)) {
    if (static_cast<int>(actions_.size()) != space_.size())
        throw ArgumentError("policy length does not match the state space");
}

DeterministicPolicy DeterministicPolicy::constant(StateSpace space, Action a) {
    return {space, std::vector<Action>(static_cast<std::size_t>(space.size()), a)};
}

DeterministicPolicy DeterministicPolicy::from_indices(StateSpace space, std::span<const int> indices) {
    std::vector<Action> actions;
    actions.reserve(indices.size());
    for (int i : indices) actions.push_back(action_from_index(i));
    return {space, std::move(actions)};
}

std::vector<int> DeterministicPolicy::indices() const {
    std::vector<int> out;
    out.reserve(actions_.size());
    for (Action a : actions_) out.push_back(action_index(a));
    return out;
}

PolicyEvaluation evaluate_chain(const TransitionModel& T, std::span<const int> choice,
                                std::span<const double> state_cost, std::span<const double> action_cost,
                                int initial_state) {
    const int S = T.num_states();
    if (static_cast<int>(choice.size()) != S || static_cast<int>(state_cost.size()) != S)
        throw ArgumentError("policy or cost vector does not match the transition model");
    if (static_cast<int>(action_cost.size()) != T.num_actions()) throw ArgumentError("action cost size mismatch");
    if (initial_state < 0 || initial_state >= S) throw ArgumentError("initial state out of range");

    Matrix P(S, S);
    for (int s = 0; s < S; ++s) {
        const int a = choice[static_cast<std::size_t>(s)];
        if (a < 0 || a >= T.num_actions()) throw ArgumentError("policy uses an unknown action");
        const auto row = T.row(s, a);
        for (int n = 0; n < S; ++n) P(s, n) = row[static_cast<std::size_t>(n)];
    }

    // reach(i, j): j reachable from i in zero or more steps.
    std::vector<std::vector<char>> reach(static_cast<std::size_t>(S), std::vector<char>(static_cast<std::size_t>(S), 0));
    std::vector<int> stack;
    for (int i = 0; i < S; ++i) {
        auto& seen = reach[static_cast<std::size_t>(i)];
        seen[static_cast<std::size_t>(i)] = 1;
        stack.assign(1, i);
        while (!stack.empty()) {
            const int u = stack.back();
            stack.pop_back();
            for (int n = 0; n < S; ++n)
                if (P(u, n) > 0.0 && !seen[static_cast<std::size_t>(n)]) {
                    seen[static_cast<std::size_t>(n)] = 1;
                    stack.push_back(n);
                }
        }
    }
    const auto r = [&](int i, int j) { return reach[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] != 0; };

    // A state is recurrent iff everything it reaches reaches it back; its
    // closed class is then the set of states it reaches.
    std::vector<int> class_of(static_cast<std::size_t>(S), -1);
    std::vector<std::vector<int>> classes;
    std::vector<int> transient;
    for (int i = 0; i < S; ++i) {
        if (!r(initial_state, i)) continue;
        if (class_of[static_cast<std::size_t>(i)] >= 0) continue;
        bool recurrent = true;
        for (int j = 0; j < S && recurrent; ++j)
            if (r(i, j) && !r(j, i)) recurrent = false;
        if (!recurrent) {
            transient.push_back(i);
            continue;
        }
        std::vector<int> members;
        for (int j = 0; j < S; ++j)
            if (r(i, j)) {
                members.push_back(j);
                class_of[static_cast<std::size_t>(j)] = static_cast<int>(classes.size());
            }
        classes.push_back(std::move(members));
    }
    if (classes.empty()) throw EvaluationError("no closed class reachable from the initial state");

    Vector mu = Vector::Zero(S);
    std::vector<double> weight(classes.size(), 0.0);
    if (class_of[static_cast<std::size_t>(initial_state)] >= 0) {
        weight[static_cast<std::size_t>(class_of[static_cast<std::size_t>(initial_state)])] = 1.0;
    } else {
        const auto nt = static_cast<Eigen::Index>(transient.size());
        Matrix M = Matrix::Identity(nt, nt);
        for (Eigen::Index i = 0; i < nt; ++i)
            for (Eigen::Index j = 0; j < nt; ++j)
                M(i, j) -= P(transient[static_cast<std::size_t>(i)], transient[static_cast<std::size_t>(j)]);
        Eigen::FullPivLU<Matrix> lu(M);
        if (!lu.isInvertible()) throw EvaluationError("transient block is singular");
        const auto start = static_cast<Eigen::Index>(
            std::find(transient.begin(), transient.end(), initial_state) - transient.begin());
        for (std::size_t c = 0; c < classes.size(); ++c) {
            Vector into = Vector::Zero(nt);
            for (Eigen::Index i = 0; i < nt; ++i)
                for (int j : classes[c]) into(i) += P(transient[static_cast<std::size_t>(i)], j);
            weight[c] = lu.solve(into)(start);
        }
    }

    for (std::size_t c = 0; c < classes.size(); ++c) {
        if (weight[c] <= 0.0) continue;
        const auto& members = classes[c];
        const auto m = static_cast<Eigen::Index>(members.size());
        // pi (P_CC - I) = 0 with the last equation replaced by sum(pi) = 1.
        Matrix M(m, m);
        for (Eigen::Index i = 0; i < m; ++i)
            for (Eigen::Index j = 0; j < m; ++j)
                M(i, j) = P(members[static_cast<std::size_t>(j)], members[static_cast<std::size_t>(i)]) - (i == j ? 1.0 : 0.0);
        M.row(m - 1).setOnes();
        Vector rhs = Vector::Zero(m);
        rhs(m - 1) = 1.0;
        Eigen::FullPivLU<Matrix> lu(M);
        if (!lu.isInvertible()) throw EvaluationError("stationary system is singular");
        const Vector pi = lu.solve(rhs);
        for (Eigen::Index i = 0; i < m; ++i) mu(members[static_cast<std::size_t>(i)]) += weight[c] * std::max(0.0, pi(i));
    }
    const double total = mu.sum();
    if (!(total > 0.0) || !std::isfinite(total)) throw EvaluationError("stationary distribution is degenerate");
    mu /= total;

    PolicyEvaluation out;
    out.distribution.resize(static_cast<std::size_t>(S));
    for (int s = 0; s < S; ++s) {
        const auto i = static_cast<std::size_t>(s);
        out.distribution[i] = mu(s);
        out.violation += mu(s) * state_cost[i];
        out.scheduling_cost += mu(s) * action_cost[static_cast<std::size_t>(choice[i])];
    }
    return out;
}

PolicyEvaluation evaluate_policy(const TransitionModel& T, const DeterministicPolicy& policy,
                                 std::span<const double> rs, const CostModel& costs) {
    const std::vector<double> action_cost{costs.c_a, costs.c_b, 0.0};
    const auto idx = policy.indices();
    return evaluate_chain(T, idx, rs, action_cost, 0);
}

namespace {

// States the chain never visits from s0 keep no action: the greedy step fills
// them from their own class's values, which for a zero budget would leave
// transmissions in the table that can never happen.
void idle_where_unreachable(const TransitionModel& T, std::vector<int>& choice, int s0) {
    const int S = T.num_states();
    std::vector<char> seen(static_cast<std::size_t>(S), 0);
    std::vector<int> stack{s0};
    seen[static_cast<std::size_t>(s0)] = 1;
    while (!stack.empty()) {
        const int s = stack.back();
        stack.pop_back();
        const auto row = T.row(s, choice[static_cast<std::size_t>(s)]);
        for (int n = 0; n < S; ++n)
            if (row[static_cast<std::size_t>(n)] > 0.0 && !seen[static_cast<std::size_t>(n)]) {
                seen[static_cast<std::size_t>(n)] = 1;
                stack.push_back(n);
            }
    }
    for (int s = 0; s < S; ++s)
        if (!seen[static_cast<std::size_t>(s)]) choice[static_cast<std::size_t>(s)] = action_index(Action::Idle);
}

}  // namespace

BisectionResult bisection_solve(const StateSpace& space, const TransitionModel& T, std::span<const double> rs,
                                const CostModel& costs, const SolverConfig& cfg) {
    cfg.validate();
    costs.validate();
    if (T.num_states() != space.size()) throw ArgumentError("state space does not match the transition model");

    struct Probe {
        DeterministicPolicy policy;
        PolicyEvaluation eval;
        double gain;
    };
    const auto probe = [&](double lambda) {
        auto res = rvia_solve(T, lagrangian_costs(rs, costs, lambda), cfg);
        idle_where_unreachable(T, res.greedy, 0);
        auto policy = DeterministicPolicy::from_indices(space, res.greedy);
        auto eval = evaluate_policy(T, policy, rs, costs);
        return Probe{std::move(policy), std::move(eval), res.gain};
    };
    const auto feasible = [&](const Probe& p) { return p.eval.scheduling_cost <= costs.c_max + 1e-12; };

    double lo = cfg.lambda_l;
    double hi = cfg.lambda_u;
    int doublings = 0;
    Probe upper = probe(hi);
    while (!feasible(upper)) {
        if (doublings >= cfg.max_doublings)
            throw InfeasibleError("no multiplier up to " + std::to_string(hi) + " meets the cost budget " +
                                  std::to_string(costs.c_max));
        lo = hi;
        hi *= 2.0;
        ++doublings;
        upper = probe(hi);
    }
    Probe lower = probe(lo);
    int steps = 0;
    while (hi - lo >= cfg.kappa) {
        const double mid = 0.5 * (lo + hi);
        Probe p = probe(mid);
        ++steps;
        if (feasible(p)) {
            hi = mid;
            upper = std::move(p);
        } else {
            lo = mid;
            lower = std::move(p);
        }
    }
    return BisectionResult{hi,          lo, std::move(upper.policy), std::move(upper.eval), std::move(lower.policy),
                           std::move(lower.eval), upper.gain, steps, doublings};
}

SchedulingSolution solve_scheduling(const SystemModel& model, const Thresholds& th, const LinkParams& links,
                                    const ContextChain& chain, const CostModel& costs, const SolverConfig& cfg) {
    links.validate();
    const Truncation t = truncation_threshold(model, th);
    const StateSpace space(t.delta_thr);
    const auto T = build_transitions(links.eps_a, links.eps_b, chain, t.delta_thr);
    const auto rs = build_reward(t.delta_lo, t.delta_hi, t.delta_thr);
    return {t, bisection_solve(space, T, rs, costs, cfg)};
}

}  // namespace wncs
