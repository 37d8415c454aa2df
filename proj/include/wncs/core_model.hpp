#pragma once

#include <cstdint>

#include "wncs/linalg.hpp"
#include "wncs/rng.hpp"

namespace wncs {

/// Discrete-time LTI plant x' = A x + B u + w, w ~ N(0, Rw), with scalar
/// output y = C x used for the goal and the event trigger.
struct SystemModel {
    Matrix A;
    Matrix B;
    RowVector C;
    Matrix Rw;

    int state_dim() const { return static_cast<int>(A.rows()); }
    int input_dim() const { return static_cast<int>(B.cols()); }

    /// Throws ConfigError on inconsistent dimensions or a non-symmetric /
    /// indefinite noise covariance.
    void validate() const;

    /// The load-frequency-control case study plant.
    static SystemModel lfc_case_study();
    /// The slowly varying alternative plant used for the retransmission study.
    static SystemModel quasi_static_case_study();
};

struct PlantState {
    Vector x;
    std::int64_t k = 0;
};

/// Environment condition. Sensitive is v = 1 (tighter tolerance).
enum class Context : int { Nominal = 0, Sensitive = 1 };

inline int to_int(Context v) { return static_cast<int>(v); }
inline Context flipped(Context v) { return v == Context::Nominal ? Context::Sensitive : Context::Nominal; }
Context context_from_int(int v);

/// Symmetric two-state chain: stay with probability p_self, flip otherwise.
struct ContextChain {
    double p_self = 0.8;

    double p_switch() const { return 1.0 - p_self; }
    void validate() const;
};

/// Context-dependent tolerance on |C x|.
struct Thresholds {
    double zeta0 = 0.1;
    double zeta1 = 0.01;

    double for_context(Context v) const { return v == Context::Nominal ? zeta0 : zeta1; }
    void validate() const;
};

PlantState plant_step(const SystemModel& model, const PlantState& state, const Vector& u, const Vector& w);

/// Draws from N(0, Rw). The factorisation is computed once per sampler.
class NoiseSampler {
public:
    explicit NoiseSampler(const SystemModel& model);
    Vector sample(RandomStream& rng) const;

private:
    Matrix factor_;
};

Vector sample_noise(const SystemModel& model, RandomStream& rng);

/// Advances the context chain with an externally drawn uniform number.
Context context_step(const ContextChain& chain, Context v, double uniform_draw);
Context context_step(const ContextChain& chain, Context v, RandomStream& rng);

/// Estimation-error covariance after delta slots without a fresh sample:
/// sum_{i=1..delta} A^{i-1} Rw (A^T)^{i-1}.
Matrix error_covariance(const SystemModel& model, int delta);

/// Plant covariance one slot after a successful command issued with AoI delta:
/// sum_{i=1..delta} A^i Rw (A^T)^i + Rw.
Matrix plant_covariance_after_control(const SystemModel& model, int delta);

/// J = 1 iff |C x| > zeta_v for the true context. Equality is not a violation.
bool violation_indicator(const Thresholds& th, const SystemModel& model, const Vector& x, Context v);

double spectral_radius(const Matrix& A);
inline double spectral_radius(const SystemModel& model) { return spectral_radius(model.A); }

}  // namespace wncs
