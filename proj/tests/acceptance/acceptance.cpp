// One PASS/FAIL line per acceptance criterion. Exit status is non-zero when
// any criterion fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "wncs/experiment.hpp"
#include "wncs/mdp.hpp"
#include "wncs/simulation.hpp"

using namespace wncs;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

void fail(Outcome& o, const std::string& why) {
    o.pass = false;
    if (!o.detail.empty()) o.detail += "; ";
    o.detail += why;
}

void note(Outcome& o, const std::string& what) {
    if (!o.detail.empty()) o.detail += "; ";
    o.detail += what;
}

const ContextChain kChain{0.8};

Outcome kernel_stochasticity() {
    Outcome o;
    const auto t0 = Clock::now();
    const auto tr = truncation_threshold(SystemModel::lfc_case_study(), Thresholds{});
    const LinkParams links;
    const auto T = build_transitions(links.eps_a, links.eps_b, kChain, tr.delta_thr);
    const double err = T.max_row_error();
    const double dt = seconds_since(t0);
    if (T.num_states() != 4 * tr.delta_thr) fail(o, "state count");
    if (!(err <= 1e-12)) fail(o, "row error " + fmt("%.3g", err));
    if (T.min_entry() < 0.0) fail(o, "negative entry");
    if (dt >= 1.0) fail(o, "runtime " + fmt("%.2f s", dt));
    note(o, std::to_string(T.num_states()) + "x3 rows, max |sum-1| " + fmt("%.2g", err));
    return o;
}

Outcome covariance_oracle() {
    Outcome o;
    for (const auto& model : {SystemModel::lfc_case_study(), SystemModel::quasi_static_case_study()}) {
        Matrix rec = model.Rw;
        double worst = 0.0;
        double prev_spread = 0.0;
        for (int d = 1; d <= 50; ++d) {
            const Matrix direct = error_covariance(model, d);
            worst = std::max(worst, (direct - rec).norm() / rec.norm());
            rec = model.A * rec * model.A.transpose() + model.Rw;
            const double spread = std::sqrt((model.C * plant_covariance_after_control(model, d) * model.C.transpose()).value());
            if (spread < prev_spread) fail(o, "spread decreases at delta " + std::to_string(d));
            prev_spread = spread;
        }
        if (!(worst <= 1e-12)) fail(o, "relative gap " + fmt("%.3g", worst));
        note(o, "max relative gap " + fmt("%.2g", worst));
    }
    return o;
}

Outcome reward_oracle() {
    Outcome o;
    const auto model = SystemModel::lfc_case_study();
    std::vector<Thresholds> pairs{Thresholds{}};
    RandomStream rng(2024);
    while (pairs.size() < 6) {
        const double z1 = 0.003 + 0.05 * rng.uniform();
        const double z0 = z1 + 0.3 * rng.uniform();
        pairs.push_back(Thresholds{z0, z1});
    }
    for (const auto& th : pairs) {
        const int lo = oracles::first_age_above(model, th.zeta1);
        const int hi = oracles::first_age_above(model, th.zeta0);
        const auto tr = truncation_threshold(model, th);
        if (tr.delta_lo != lo || tr.delta_hi != hi) {
            fail(o, "thresholds differ at zeta " + fmt("%.4g", th.zeta0));
            continue;
        }
        if (build_reward(tr.delta_lo, tr.delta_hi, tr.delta_thr) != oracles::reward_by_rows(lo, hi, hi))
            fail(o, "map differs at zeta " + fmt("%.4g", th.zeta0));
    }
    note(o, std::to_string(pairs.size()) + " threshold pairs");
    return o;
}

Outcome solver_small_scale() {
    Outcome o;
    const auto t0 = Clock::now();
    const CostModel costs;
    for (const auto& [thr, lo, hi] : {std::array<int, 3>{2, 1, 2}, std::array<int, 3>{3, 2, 3}}) {
        const StateSpace space(thr);
        const auto T = build_transitions(0.1, 0.2, kChain, thr);
        const auto rs = build_reward(lo, hi, thr);
        const auto all = oracles::enumerate_policies(T, rs, costs);
        for (double lambda : fixtures::kSmallLambdas) {
            const auto res = rvia_solve(T, lagrangian_costs(rs, costs, lambda), SolverConfig{});
            const double got =
                evaluate_policy(T, DeterministicPolicy::from_indices(space, res.greedy), rs, costs).lagrangian(lambda);
            const double best = oracles::min_lagrangian(all, lambda);
            if (std::abs(got - best) > 1e-9) fail(o, "thr " + std::to_string(thr) + " lambda " + fmt("%g", lambda));
        }
        note(o, "thr " + std::to_string(thr) + ": " + std::to_string(all.violation.size()) + " policies");
    }
    for (const auto& f : fixtures::kLpGains) {
        const StateSpace space(f.delta_thr);
        const auto T = build_transitions(0.1, 0.2, kChain, f.delta_thr);
        const auto rs = build_reward(f.delta_lo, f.delta_hi, f.delta_thr);
        for (std::size_t i = 0; i < fixtures::kSmallLambdas.size(); ++i) {
            const double lambda = fixtures::kSmallLambdas[i];
            const auto res = rvia_solve(T, lagrangian_costs(rs, costs, lambda), SolverConfig{});
            const double got =
                evaluate_policy(T, DeterministicPolicy::from_indices(space, res.greedy), rs, costs).lagrangian(lambda);
            if (std::abs(got - f.gain[i]) > 1e-8 * (1.0 + f.gain[i]))
                fail(o, "thr " + std::to_string(f.delta_thr) + " lambda " + fmt("%g", lambda));
        }
    }
    note(o, "thr 4-6 against LP optimum");
    const double dt = seconds_since(t0);
    if (dt >= 60.0) fail(o, "runtime " + fmt("%.1f s", dt));
    note(o, fmt("%.1f s", dt));
    return o;
}

Outcome lagrangian_monotonicity() {
    Outcome o;
    const auto tr = truncation_threshold(SystemModel::lfc_case_study(), Thresholds{});
    const LinkParams links;
    const StateSpace space(tr.delta_thr);
    const auto T = build_transitions(links.eps_a, links.eps_b, kChain, tr.delta_thr);
    const auto rs = build_reward(tr.delta_lo, tr.delta_hi, tr.delta_thr);
    const CostModel costs;
    double prev_cost = 1e300, prev_gain = -1e300;
    for (int i = 0; i < 10; ++i) {
        const double lambda = 0.0001 * std::pow(3.0, i);  // 1e-4 .. ~2
        const auto res = rvia_solve(T, lagrangian_costs(rs, costs, lambda), SolverConfig{});
        const auto e = evaluate_policy(T, DeterministicPolicy::from_indices(space, res.greedy), rs, costs);
        if (e.scheduling_cost > prev_cost + 1e-9) fail(o, "cost rises at lambda " + fmt("%g", lambda));
        if (e.lagrangian(lambda) < prev_gain - 1e-9) fail(o, "gain falls at lambda " + fmt("%g", lambda));
        prev_cost = e.scheduling_cost;
        prev_gain = e.lagrangian(lambda);
    }
    note(o, "cost at largest lambda " + fmt("%.4g", prev_cost));
    return o;
}

Outcome budget_feasibility() {
    Outcome o;
    ExperimentSpec spec;
    for (double c_max : {0.23, 0.25, 0.28}) {
        spec.costs.c_max = c_max;
        const auto sol = solve(spec);
        const double c = sol.bisection.feasible_eval.scheduling_cost;
        if (!(c <= c_max + spec.solver.kappa)) fail(o, "cost " + fmt("%.4g", c) + " over " + fmt("%g", c_max));
        note(o, fmt("c_max %g", c_max) + " -> " + fmt("%.4g", c));
    }
    return o;
}

Outcome table3_reproduction() {
    Outcome o;
    const auto t0 = Clock::now();
    ExperimentSpec spec;
    spec.slots = 100000;
    spec.replications = 5;
    spec.seed = 1;
    const auto rows = table3(spec);
    const double dt = seconds_since(t0);
    // rs, rr, aoi, aoii, gsc, gsc+cae, +pc, +crc
    std::vector<double> v;
    for (const auto& r : rows) v.push_back(r.metrics.violation_prob);
    const double rs = v[0], rr = v[1], gsc = v[4], cae = v[5], pc = v[6], crc = v[7];

    if (!(crc < pc)) fail(o, "order CRC<PC");
    if (!(pc < cae)) fail(o, "order PC<CAE");
    if (!(cae < gsc)) fail(o, "order CAE<GSC");
    if (!(gsc < rr)) fail(o, "order GSC<RR (" + fmt("%.2f%%", 100 * gsc) + " vs " + fmt("%.2f%%", 100 * rr) + ")");
    const double gsc_cost = rows[4].metrics.norm_total_cost;
    if (!(gsc_cost < 0.25)) fail(o, "gsc cost " + fmt("%.3f", gsc_cost));
    for (int i = 0; i < 4; ++i)
        if (!(gsc_cost < 0.5 * rows[static_cast<std::size_t>(i)].metrics.norm_total_cost))
            fail(o, "gsc cost not under half of " + rows[static_cast<std::size_t>(i)].policy);

    struct Band {
        const char* name;
        double got, target, tol;
    };
    for (const auto& b : {Band{"RS", rs, 0.2149, 0.03}, Band{"RR", rr, 0.1525, 0.03}, Band{"GSC", gsc, 0.1127, 0.03},
                          Band{"CAE", cae, 0.0668, 0.03}, Band{"PC", pc, 0.0174, 0.015}, Band{"CRC", crc, 0.0071, 0.015}})
        if (std::abs(b.got - b.target) > b.tol)
            fail(o, std::string("band ") + b.name + " " + fmt("%.2f%%", 100 * b.got));
    if (dt >= 300.0) fail(o, "runtime " + fmt("%.0f s", dt));

    std::string vals = "viol";
    for (double x : v) vals += " " + fmt("%.2f%%", 100 * x);
    note(o, vals);
    note(o, "gsc cost " + fmt("%.3f", gsc_cost) + ", " + fmt("%.0f s", dt));
    return o;
}

Outcome cae_dominance() {
    Outcome o;
    ExperimentSpec spec;
    spec.slots = 10000;
    const auto table = solve(spec).bisection.feasible;
    int worse = 0;
    double ratio = 0.0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        spec.seed = seed;
        const auto base =
            run_episode(make_sim_config(spec, {PolicyKind::Gsc, EstimatorMode::Baseline, TriggerMode::Reactive}, &table));
        const auto cae = run_episode(
            make_sim_config(spec, {PolicyKind::Gsc, EstimatorMode::ControlAware, TriggerMode::Reactive}, &table));
        if (cae.metrics.mse > base.metrics.mse) ++worse;
        ratio += cae.metrics.mse / base.metrics.mse / 20.0;
    }
    if (worse > 0) fail(o, std::to_string(worse) + " seeds with larger error");
    note(o, "20 seeds, mean mse ratio " + fmt("%.3g", ratio));
    return o;
}

Outcome tarq_sign() {
    Outcome o;
    struct Plant {
        const char* name;
        SystemModel model;
        double sign;  // expected sign of (with retransmission) - (without)
    };
    for (const auto& p : {Plant{"quasi-static", SystemModel::quasi_static_case_study(), -1.0},
                          Plant{"dynamic", SystemModel::lfc_case_study(), 1.0}}) {
        ExperimentSpec spec;
        spec.model = p.model;
        spec.slots = 100000;
        spec.replications = 8;
        const auto table = solve(spec).bisection.feasible;
        const RunSpec run{PolicyKind::Gsc, EstimatorMode::ControlAware, TriggerMode::ConservativeReactive};
        std::vector<double> gaps;
        for (double eps_c : {0.2, 0.4}) {
            spec.links.eps_c = eps_c;
            spec.control.n_max = 1;
            const double plain = run_point(spec, run, &table).metrics.violation_prob;
            spec.control.n_max = 3;
            const double arq = run_point(spec, run, &table).metrics.violation_prob;
            gaps.push_back(arq - plain);
            note(o, std::string(p.name) + fmt(" eps_c %g: ", eps_c) + fmt("%.3f%%", 100 * plain) + " -> " +
                        fmt("%.3f%%", 100 * arq));
            if (!(p.sign * (arq - plain) > 0.0)) fail(o, std::string(p.name) + fmt(" sign at eps_c %g", eps_c));
        }
        if (!(p.sign * gaps[1] > p.sign * gaps[0])) fail(o, std::string(p.name) + " gap does not widen");

        const auto tr = truncation_threshold(p.model, Thresholds{});
        for (int delta : {1, tr.delta_lo / 2 + 1}) {
            for (double eps_c : {0.2, 0.4}) {
                const Matrix d = tarq_gap_analytic(p.model, eps_c, 3, delta);
                // covariance with retransmission minus without
                const double g = (p.model.C * d * p.model.C.transpose()).value();
                if (!(p.sign * g > 0.0))
                    fail(o, std::string(p.name) + " analytic sign at delta " + std::to_string(delta));
            }
        }
    }
    return o;
}

Outcome crc_tradeoff() {
    Outcome o;
    ExperimentSpec spec;
    spec.slots = 100000;
    spec.replications = 5;
    const auto table = solve(spec).bisection.feasible;
    const RunSpec run{PolicyKind::Gsc, EstimatorMode::ControlAware, TriggerMode::ConservativeReactive};
    double prev_v = -1.0, prev_c = 1e300;
    std::string vals;
    for (double theta : {0.2, 0.4, 0.6, 0.8}) {
        spec.control.theta = theta;
        const auto m = run_point(spec, run, &table).metrics;
        if (m.violation_prob < prev_v) fail(o, "violation falls at theta " + fmt("%g", theta));
        if (m.norm_total_cost > prev_c) fail(o, "cost rises at theta " + fmt("%g", theta));
        prev_v = m.violation_prob;
        prev_c = m.norm_total_cost;
        vals += fmt(" %g:", theta) + fmt("%.3f%%", 100 * m.violation_prob) + "/" + fmt("%.4f", m.norm_total_cost);
    }
    note(o, "theta viol/cost" + vals);
    return o;
}

Outcome determinism() {
    Outcome o;
    const auto base = std::filesystem::temp_directory_path() / "wncs_acceptance_det";
    std::filesystem::remove_all(base);
    std::vector<std::string> texts;
    for (const char* tag : {"a", "b"}) {
        const auto dir = base / tag;
        const std::string cmd = std::string(WNCS_CLI_PATH) + " table3 --slots 20000 --seed 11 --quiet --out " +
                                dir.string() + " > /dev/null 2>&1";
        if (std::system(cmd.c_str()) != 0) {
            fail(o, "cli exited non-zero");
            return o;
        }
        std::ifstream in(dir / "table3.csv", std::ios::binary);
        std::ostringstream buf;
        buf << in.rdbuf();
        texts.push_back(buf.str());
    }
    if (texts[0].empty() || texts[0] != texts[1]) fail(o, "csv differs");
    note(o, std::to_string(texts[0].size()) + " bytes");
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"kernel stochasticity", kernel_stochasticity},
        {"covariance oracle", covariance_oracle},
        {"reward map oracle", reward_oracle},
        {"solver at small scale", solver_small_scale},
        {"lagrangian monotonicity", lagrangian_monotonicity},
        {"budget feasibility", budget_feasibility},
        {"benchmark comparison", table3_reproduction},
        {"control-aware estimation dominance", cae_dominance},
        {"retransmission sign", tarq_sign},
        {"crc theta tradeoff", crc_tradeoff},
        {"determinism", determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        if (!o.pass) ++failed;
        std::printf("criterion %2zu %s: %s (%s)\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first,
                    o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria failed\n", failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
