#include <doctest.h>

#include "wncs/control.hpp"
#include "wncs/errors.hpp"

using namespace wncs;

namespace {

Vector output_state(double y) {
    Vector x = Vector::Zero(3);
    x(0) = y;
    return x;
}

}  // namespace

TEST_CASE("reactive trigger") {
    const auto model = SystemModel::lfc_case_study();
    const Thresholds th;
    CHECK_FALSE(trigger_reactive(th, model, output_state(0.05), Context::Nominal));
    CHECK(trigger_reactive(th, model, output_state(0.05), Context::Sensitive));
    CHECK_FALSE(trigger_reactive(th, model, Vector::Zero(3), Context::Nominal));
    CHECK_FALSE(trigger_reactive(th, model, Vector::Zero(3), Context::Sensitive));
}

TEST_CASE("proactive trigger looks one slot ahead") {
    const auto model = SystemModel::lfc_case_study();
    const Thresholds th;
    CHECK_FALSE(trigger_proactive(th, model, model.A * Vector::Zero(3), Context::Nominal));
    // The second state feeds the output with gain 6.
    Vector d = Vector::Zero(3);
    d(1) = 0.02;
    CHECK_FALSE(trigger_reactive(th, model, d, Context::Nominal));
    CHECK(trigger_proactive(th, model, model.A * d, Context::Nominal));
    ControlConfig pc{TriggerMode::Proactive};
    CHECK(should_trigger(pc, th, model, d, Context::Nominal));
}

TEST_CASE("proactive triggers at least as often as reactive on an open-loop trace") {
    const auto model = SystemModel::lfc_case_study();
    const Thresholds th;
    const NoiseSampler sampler(model);
    RandomStream rng(5);
    Vector x = Vector::Zero(3);
    int reactive = 0, proactive = 0;
    for (int k = 0; k < 20; ++k) {
        x = model.A * x + sampler.sample(rng);
        reactive += trigger_reactive(th, model, x, Context::Sensitive);
        proactive += trigger_proactive(th, model, model.A * x, Context::Sensitive);
    }
    CHECK(proactive >= reactive);
}

TEST_CASE("conservative trigger") {
    const auto model = SystemModel::lfc_case_study();
    const Thresholds th;
    CHECK(trigger_crc(th, model, output_state(0.06), Context::Nominal, 0.5));
    CHECK_FALSE(trigger_reactive(th, model, output_state(0.06), Context::Nominal));
    CHECK_FALSE(trigger_crc(th, model, Vector::Zero(3), Context::Nominal, 0.5));
    CHECK_THROWS_AS(trigger_crc(th, model, output_state(0.06), Context::Nominal, 1.5), ConfigError);
    CHECK_THROWS_AS(trigger_crc(th, model, output_state(0.06), Context::Nominal, 0.0), ConfigError);

    RandomStream rng(8);
    for (int i = 0; i < 500; ++i) {
        const Vector x = output_state(0.2 * rng.uniform());
        const Context v = rng.uniform() < 0.5 ? Context::Nominal : Context::Sensitive;
        if (trigger_reactive(th, model, x, v)) CHECK(trigger_crc(th, model, x, v, 0.3));
        CHECK(trigger_crc(th, model, x, v, 1.0 - 1e-12) == trigger_reactive(th, model, x, v));
    }
}

TEST_CASE("control config validation names theta") {
    ControlConfig cfg{TriggerMode::ConservativeReactive, 1.5};
    try {
        cfg.validate();
        FAIL("expected a ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("theta ∈ (0,1)") != std::string::npos);
    }
    cfg.theta = 0.5;
    cfg.n_max = 0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("commands and actuation") {
    const auto model = SystemModel::lfc_case_study();
    SUBCASE("zero estimate gives a null-effect command") {
        const auto cmd = make_command(model, Vector::Zero(3), Actuation::IdealCancellation);
        CHECK(actuation_effect(model, cmd, Actuation::IdealCancellation).norm() == 0.0);
        CHECK(actuation_effect(model, cmd, Actuation::PseudoInverseGain).norm() == 0.0);
    }
    SUBCASE("ideal cancellation with a perfect estimate zeroes the next state") {
        Vector x(3);
        x << 0.2, -0.1, 0.4;
        const auto cmd = make_command(model, x, Actuation::IdealCancellation);
        const auto next = apply_actuation(model, {x, 0}, cmd, Vector::Zero(3));
        CHECK(next.x.norm() < 1e-15);
    }
    SUBCASE("no command is open loop") {
        Vector x(3);
        x << 1, 0, 0;
        CHECK(apply_actuation(model, {x, 0}, std::nullopt, Vector::Zero(3)).x.isApprox(model.A * x));
    }
    SUBCASE("stale command after a retransmission burst") {
        Vector x_trig(3), x_now(3);
        x_trig << 0.1, 0.0, 0.0;
        x_now << 0.3, 0.02, -0.1;
        const Vector w = Vector::Constant(3, 1e-4);
        const auto cmd = make_command(model, x_trig, Actuation::IdealCancellation);
        const auto next = apply_actuation(model, {x_now, 5}, cmd, w);
        CHECK(next.x.isApprox(model.A * x_now - model.A * x_trig + w));
    }
    SUBCASE("scalar plant: both modes coincide") {
        SystemModel scalar{Matrix::Constant(1, 1, 1.3), Matrix::Constant(1, 1, 0.5), RowVector::Ones(1),
                           Matrix::Constant(1, 1, 1e-3)};
        const Vector x_hat = Vector::Constant(1, 0.7);
        const auto cmd = make_command(scalar, x_hat, Actuation::PseudoInverseGain);
        CHECK(cmd.u(0) == doctest::Approx(-1.3 / 0.5 * 0.7));
        CHECK(actuation_effect(scalar, cmd, Actuation::PseudoInverseGain)(0) ==
              doctest::Approx(actuation_effect(scalar, cmd, Actuation::IdealCancellation)(0)));
    }
}

TEST_CASE("parsing control names") {
    CHECK(parse_trigger_mode("reactive") == TriggerMode::Reactive);
    CHECK(parse_trigger_mode("proactive") == TriggerMode::Proactive);
    CHECK(parse_trigger_mode("crc") == TriggerMode::ConservativeReactive);
    CHECK_THROWS_AS(parse_trigger_mode("sometimes"), ConfigError);
    CHECK(parse_actuation("pinv") == Actuation::PseudoInverseGain);
}
