#include "wncs/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "wncs/errors.hpp"

namespace wncs {
namespace {

std::string shape(const Matrix& m) {
    std::ostringstream os;
    os << m.rows() << "x" << m.cols();
    return os.str();
}

// Returns L with L L^T = Rw for a PSD Rw; throws on a clearly indefinite one.
Matrix psd_factor(const Matrix& Rw) {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(Rw);
    if (eig.info() != Eigen::Success) {
        throw ConfigError("Rw: eigen-decomposition failed");
    }
    const Vector& values = eig.eigenvalues();
    const double scale = std::max(1.0, values.cwiseAbs().maxCoeff());
    if (values.minCoeff() < -1e-12 * scale) {
        throw ConfigError("Rw must be positive semidefinite");
    }
    return eig.eigenvectors() * values.cwiseMax(0.0).cwiseSqrt().asDiagonal();
}

}  // namespace

void SystemModel::validate() const {
    const auto m = A.rows();
    if (m < 1) {
        throw ConfigError("A must have at least one row");
    }
    if (A.cols() != m) {
        throw ConfigError("A must be square, got " + shape(A));
    }
    if (B.rows() != m || B.cols() < 1) {
        throw ConfigError("B must be " + std::to_string(m) + "xn with n >= 1, got " + shape(B));
    }
    if (C.cols() != m) {
        throw ConfigError("C must have " + std::to_string(m) + " columns");
    }
    if (Rw.rows() != m || Rw.cols() != m) {
        throw ConfigError("Rw must be " + std::to_string(m) + "x" + std::to_string(m) + ", got " + shape(Rw));
    }
    if (!A.allFinite() || !B.allFinite() || !C.allFinite() || !Rw.allFinite()) {
        throw ConfigError("plant matrices must be finite");
    }
    const double rw_scale = std::max(1.0, Rw.cwiseAbs().maxCoeff());
    if ((Rw - Rw.transpose()).cwiseAbs().maxCoeff() > 1e-12 * rw_scale) {
        throw ConfigError("Rw must be symmetric");
    }
    psd_factor(Rw);
}

SystemModel SystemModel::lfc_case_study() {
    SystemModel m;
    m.A.resize(3, 3);
    m.A << -0.08, 6.0, 0.0,
            0.0, -0.25, 0.25,
           -0.4167, 0.0, -1.25;
    m.B.resize(3, 1);
    m.B << 0.0, 0.0, 1.25;
    m.C.resize(3);
    m.C << 1.0, 0.0, 0.0;
    m.Rw = 1e-7 * Matrix::Identity(3, 3);
    return m;
}

SystemModel SystemModel::quasi_static_case_study() {
    SystemModel m = lfc_case_study();
    m.A << 0.08, 1.1, 0.0,
           0.0, 0.0, 0.25,
           0.0, 0.0, 1.1;
    return m;
}

Context context_from_int(int v) {
    if (v != 0 && v != 1) {
        throw ArgumentError("context must be 0 or 1, got " + std::to_string(v));
    }
    return static_cast<Context>(v);
}

void ContextChain::validate() const {
    if (!(p_self >= 0.0 && p_self <= 1.0)) {
        throw ConfigError("context.p_self must lie in [0, 1]");
    }
}

void Thresholds::validate() const {
    if (!(zeta0 > 0.0) || !(zeta1 > 0.0)) {
        throw ConfigError("thresholds zeta0 and zeta1 must be positive");
    }
}

PlantState plant_step(const SystemModel& model, const PlantState& state, const Vector& u, const Vector& w) {
    const auto m = model.A.rows();
    if (state.x.size() != m || w.size() != m || u.size() != model.B.cols()) {
        throw ConfigError("plant_step: dimension mismatch");
    }
    return PlantState{model.A * state.x + model.B * u + w, state.k + 1};
}

NoiseSampler::NoiseSampler(const SystemModel& model) : factor_(psd_factor(model.Rw)) {}

Vector NoiseSampler::sample(RandomStream& rng) const {
    Vector z(factor_.cols());
    for (Eigen::Index i = 0; i < z.size(); ++i) {
        z(i) = rng.standard_normal();
    }
    return factor_ * z;
}

Vector sample_noise(const SystemModel& model, RandomStream& rng) { return NoiseSampler(model).sample(rng); }

Context context_step(const ContextChain& chain, Context v, double uniform_draw) {
    return uniform_draw < chain.p_self ? v : flipped(v);
}

Context context_step(const ContextChain& chain, Context v, RandomStream& rng) {
    return context_step(chain, v, rng.uniform());
}

Matrix error_covariance(const SystemModel& model, int delta) {
    if (delta < 1) {
        throw ArgumentError("error_covariance: delta must be >= 1");
    }
    const auto m = model.A.rows();
    Matrix power = Matrix::Identity(m, m);
    Matrix sum = Matrix::Zero(m, m);
    for (int i = 1; i <= delta; ++i) {
        sum += power * model.Rw * power.transpose();
        power = model.A * power;
    }
    return sum;
}

Matrix plant_covariance_after_control(const SystemModel& model, int delta) {
    if (delta < 1) {
        throw ArgumentError("plant_covariance_after_control: delta must be >= 1");
    }
    Matrix power = model.A;
    Matrix sum = model.Rw;
    for (int i = 1; i <= delta; ++i) {
        sum += power * model.Rw * power.transpose();
        power = model.A * power;
    }
    return sum;
}

bool violation_indicator(const Thresholds& th, const SystemModel& model, const Vector& x, Context v) {
    return std::abs(model.C.dot(x)) > th.for_context(v);
}

double spectral_radius(const Matrix& A) {
    if (A.rows() != A.cols() || A.rows() == 0) {
        throw ConfigError("spectral_radius: matrix must be square and non-empty");
    }
    Eigen::EigenSolver<Matrix> solver(A, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) {
        throw ConfigError("spectral_radius: eigenvalue computation failed");
    }
    return solver.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace wncs
