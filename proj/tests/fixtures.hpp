#pragma once

#include <array>

namespace fixtures {

// sqrt(C Phi(delta) C^T) for the load-frequency plant with Rw = 1e-7 I,
// tabulated once by direct summation for delta = 1..13.
inline constexpr std::array<double, 13> kLfcSpread{
    0.0019237, 0.0020779, 0.0022242, 0.0027429, 0.0039034, 0.0056505, 0.0084633,
    0.013091,  0.020451,  0.031990,  0.050106,  0.078560,  0.12321,
};

// First ages past zeta1 = 0.01 and zeta0 = 0.1.
inline constexpr int kLfcDeltaLo = 8;
inline constexpr int kLfcDeltaHi = 13;
inline constexpr int kQuasiStaticDeltaLo = 42;
inline constexpr int kQuasiStaticDeltaHi = 66;

// Optimal gains of the small instances (eps_a = 0.1, eps_b = 0.2,
// p_self = 0.8, c_a = 1, c_b = 0.8) at lambda = 0, 0.3, 0.6, 0.9, from the
// occupation-measure LP in oracles/lp_gains.py.
struct SmallInstance {
    int delta_thr;
    int delta_lo;
    int delta_hi;
    std::array<double, 4> gain;
};

inline constexpr std::array<double, 4> kSmallLambdas{0.0, 0.3, 0.6, 0.9};

inline constexpr std::array<SmallInstance, 3> kLpGains{{
    {4, 3, 4, {0.0055, 0.186842105263, 0.334425995722, 0.464455536315}},
    {5, 3, 5, {0.00505, 0.184473684211, 0.318618855097, 0.434456514944}},
    {6, 4, 6, {0.000505, 0.125178571429, 0.230969186245, 0.320523942373}},
}};

}  // namespace fixtures
