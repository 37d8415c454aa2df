#include "wncs/estimation.hpp"

#include "wncs/errors.hpp"

namespace wncs {

EstimatorState EstimatorState::initial(int state_dim) {
    return EstimatorState{Vector::Zero(state_dim), 1, Context::Nominal};
}

int update_aoi(int delta, bool delivered) {
    if (delta < 1) {
        throw ArgumentError("update_aoi: delta must be >= 1");
    }
    return delivered ? 1 : delta + 1;
}

Vector estimate_baseline(const SystemModel& model, const Vector& x_hat, const std::optional<Vector>& delivered_x,
                         const Vector& actuation) {
    const Vector& base = delivered_x ? *delivered_x : x_hat;
    return model.A * base + actuation;
}

Vector estimate_control_aware(const SystemModel& model, const Vector& x_hat, const std::optional<Vector>& delivered_x,
                              bool triggered) {
    if (delivered_x) {
        return triggered ? Vector(model.A * (*delivered_x - x_hat)) : Vector(model.A * *delivered_x);
    }
    return triggered ? Vector(Vector::Zero(x_hat.size())) : Vector(model.A * x_hat);
}

Context update_context_estimate(Context v_hat, std::optional<Context> delivered_v) {
    return delivered_v ? *delivered_v : v_hat;
}

int quality_indicator(Context v, Context v_hat) { return 1 + 2 * to_int(v) + to_int(v_hat); }

}  // namespace wncs
