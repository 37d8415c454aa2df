#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "wncs/channel.hpp"
#include "wncs/core_model.hpp"
#include "wncs/linalg.hpp"

namespace wncs {

/// Scheduler actions, numbered as in the CMDP: 1 sends the plant sensor's
/// sample, 2 the context sensor's sample, 3 stays idle.
enum class Action : int { SendPlant = 1, SendContext = 2, Idle = 3 };

inline constexpr int kNumActions = 3;
inline int action_index(Action a) { return static_cast<int>(a) - 1; }
Action action_from_index(int index);
Action action_from_number(int number);
std::string_view to_string(Action a);

struct CmdpState {
    int delta;
    int upsilon;
};

/// (delta, upsilon) grid with delta in 1..delta_thr and upsilon in 1..4,
/// flattened as 4 * (delta - 1) + (upsilon - 1).
class StateSpace {
public:
    explicit StateSpace(int delta_thr);

    int delta_thr() const { return delta_thr_; }
    int size() const { return 4 * delta_thr_; }
    /// Ages above delta_thr share the last row.
    int index(int delta, int upsilon) const;
    CmdpState state(int index) const;

    bool operator==(const StateSpace&) const = default;

private:
    int delta_thr_;
};

struct Truncation {
    int delta_context0 = 0;  ///< first age whose post-control spread exceeds zeta0
    int delta_context1 = 0;  ///< same for zeta1
    int delta_lo = 0;
    int delta_hi = 0;
    int delta_thr = 0;
};

/// Smallest age delta with sqrt(C Phi(delta) C^T) > zeta_v for each context.
/// Throws ConfigError if no delta <= hard_cap qualifies.
Truncation truncation_threshold(const SystemModel& model, const Thresholds& th, int hard_cap = 100000);

struct CostModel {
    double c_a = 1.0;
    double c_b = 0.8;
    double c_c = 0.5;
    double c_max = 0.23;

    double scheduling_cost(Action a) const;
    void validate() const;
};

/// Dense P(s' | s, a).
class TransitionModel {
public:
    TransitionModel(int num_states, int num_actions);

    int num_states() const { return states_; }
    int num_actions() const { return actions_; }

    double& at(int s, int a, int next) { return p_[offset(s, a) + next]; }
    double at(int s, int a, int next) const { return p_[offset(s, a) + next]; }
    std::span<const double> row(int s, int a) const {
        return {p_.data() + offset(s, a), static_cast<std::size_t>(states_)};
    }

    /// max over (s, a) of |sum_s' P(s'|s,a) - 1|.
    double max_row_error() const;
    double min_entry() const;

private:
    std::size_t offset(int s, int a) const {
        return (static_cast<std::size_t>(s) * actions_ + a) * states_;
    }

    int states_;
    int actions_;
    std::vector<double> p_;
};

TransitionModel build_transitions(double eps_a, double eps_b, const ContextChain& chain, int delta_thr);

/// Violation map chi(delta, upsilon) in {0, 1}, indexed like StateSpace.
std::vector<double> build_reward(int delta_lo, int delta_hi, int delta_thr);

/// Stage costs for the relaxed problem, one column per action:
/// [Rs + lambda c_a, Rs + lambda c_b, Rs]. These are costs to minimise; the
/// reward formulation negates them.
Matrix lagrangian_costs(std::span<const double> rs, const CostModel& costs, double lambda);

struct SolverConfig {
    double iota = 1e-6;
    double kappa = 1e-4;
    double lambda_l = 0.0;
    double lambda_u = 1.0;
    int s_ref = 0;
    /// RVIA runs on tau P + (1 - tau) I. Gain and optimal policies are
    /// unchanged; 1 gives the plain iteration, which crawls on nearly
    /// periodic chains such as "send every few slots".
    double aperiodicity = 0.5;
    long max_iterations = 1'000'000;
    int max_doublings = 64;

    void validate() const;
};

struct RviaResult {
    std::vector<double> relative_value;
    double gain = 0.0;
    std::vector<int> greedy;  ///< 0-based action index per state
    long iterations = 0;
    double residual = 0.0;
    std::uint64_t multiply_adds = 0;
    /// Stopped on a stationary drift: the optimum has closed classes with
    /// different gains and `gain` is that of s_ref's class.
    bool multichain = false;
};

/// Relative value iteration for average-cost MDPs. Ties in the greedy step go
/// to the lowest action index. Throws NonConvergenceError after
/// cfg.max_iterations sweeps.
RviaResult rvia_solve(const TransitionModel& T, const Matrix& stage_costs, const SolverConfig& cfg);

/// max_s |gain + V(s) - min_a [c(s,a) + sum P V]|.
double bellman_residual(const TransitionModel& T, const Matrix& stage_costs, const RviaResult& result);

class DeterministicPolicy {
public:
    DeterministicPolicy(StateSpace space, std::vector<Action> actions);
    static DeterministicPolicy constant(StateSpace space, Action a);
    static DeterministicPolicy from_indices(StateSpace space, std::span<const int> indices);

    const StateSpace& space() const { return space_; }
    Action at(int delta, int upsilon) const { return actions_[space_.index(delta, upsilon)]; }
    Action at_index(int index) const { return actions_.at(static_cast<std::size_t>(index)); }
    std::vector<int> indices() const;

    bool operator==(const DeterministicPolicy&) const = default;

private:
    StateSpace space_;
    std::vector<Action> actions_;
};

struct PolicyEvaluation {
    double violation = 0.0;        ///< long-run mean of the state cost
    double scheduling_cost = 0.0;  ///< long-run mean of the action cost
    std::vector<double> distribution;

    double lagrangian(double lambda) const { return violation + lambda * scheduling_cost; }
};

/// Long-run averages of the chain induced by `choice`, started from
/// `initial_state`. Handles several closed classes by weighting each class's
/// stationary law with its absorption probability.
PolicyEvaluation evaluate_chain(const TransitionModel& T, std::span<const int> choice, std::span<const double> state_cost,
                                std::span<const double> action_cost, int initial_state = 0);

PolicyEvaluation evaluate_policy(const TransitionModel& T, const DeterministicPolicy& policy,
                                 std::span<const double> rs, const CostModel& costs);

struct BisectionResult {
    double lambda = 0.0;        ///< lambda_u at termination
    double lambda_lower = 0.0;  ///< lambda_l at termination
    DeterministicPolicy feasible;
    PolicyEvaluation feasible_eval;
    DeterministicPolicy lower_bound;
    PolicyEvaluation lower_eval;
    double gain = 0.0;  ///< relaxed optimum at lambda
    int steps = 0;
    int doublings = 0;
};

BisectionResult bisection_solve(const StateSpace& space, const TransitionModel& T, std::span<const double> rs,
                                const CostModel& costs, const SolverConfig& cfg);

struct SchedulingSolution {
    Truncation truncation;
    BisectionResult bisection;
};

/// Truncation, kernel, reward map and bisection in one call.
SchedulingSolution solve_scheduling(const SystemModel& model, const Thresholds& th, const LinkParams& links,
                                    const ContextChain& chain, const CostModel& costs, const SolverConfig& cfg);

}  // namespace wncs
