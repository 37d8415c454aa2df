#pragma once

#include <optional>

#include "wncs/core_model.hpp"
#include "wncs/linalg.hpp"

namespace wncs {

enum class EstimatorMode {
    /// Assumes the cancelling command is applied every slot.
    Baseline,
    /// Uses whether the controller actually triggered (control-aware estimation).
    ControlAware,
};

/// Controller-side knowledge.
struct EstimatorState {
    Vector x_hat;
    int delta = 1;
    Context v_hat = Context::Nominal;

    static EstimatorState initial(int state_dim);
};

/// Age of information after one slot.
int update_aoi(int delta, bool delivered);

/// Model-based one-step prediction x_hat' = A (x_k or x_hat_k) + B u.
/// `actuation` is the input's effect B u on the state.
Vector estimate_baseline(const SystemModel& model, const Vector& x_hat, const std::optional<Vector>& delivered_x,
                         const Vector& actuation);

/// Control-aware estimate. With `triggered` the controller knows its
/// cancelling command removed A x_hat_k from the next state:
///   delivered, triggered      -> A (x_k - x_hat_k)
///   delivered, not triggered  -> A x_k
///   lost, triggered           -> 0
///   lost, not triggered       -> A x_hat_k
Vector estimate_control_aware(const SystemModel& model, const Vector& x_hat, const std::optional<Vector>& delivered_x,
                              bool triggered);

Context update_context_estimate(Context v_hat, std::optional<Context> delivered_v);

/// Joint (v, v_hat) label: (0,0)->1, (0,1)->2, (1,0)->3, (1,1)->4.
int quality_indicator(Context v, Context v_hat);

}  // namespace wncs
