"""Optimal average-cost gains for the small scheduling instances used by the
solver tests, from the occupation-measure linear program. Prints the C++
initializer pasted into test_mdp.cpp.

    python3 tests/oracles/lp_gains.py
"""
import numpy as np
from scipy.optimize import linprog

EPS_A, EPS_B, P_SELF = 0.1, 0.2, 0.8
C_A, C_B = 1.0, 0.8
INSTANCES = [(4, 3, 4), (5, 3, 5), (6, 4, 6)]  # (delta_thr, delta_lo, delta_hi)
LAMBDAS = [0.0, 0.3, 0.6, 0.9]


def kernel(D):
    S = 4 * D
    T = np.zeros((S, 3, S))

    def idx(d, u):
        return (min(d, D) - 1) * 4 + (u - 1)

    for d in range(1, D + 1):
        for u in range(1, 5):
            v = 0 if u <= 2 else 1
            vh = 0 if u in (1, 3) else 1
            s = idx(d, u)
            for vn, pv in ((v, P_SELF), (1 - v, 1 - P_SELF)):
                T[s, 0, idx(1, 1 + 2 * vn + vh)] += (1 - EPS_A) * pv
                T[s, 0, idx(d + 1, 1 + 2 * vn + vh)] += EPS_A * pv
                T[s, 1, idx(d + 1, 1 + 2 * vn + v)] += (1 - EPS_B) * pv
                T[s, 1, idx(d + 1, 1 + 2 * vn + vh)] += EPS_B * pv
                T[s, 2, idx(d + 1, 1 + 2 * vn + vh)] += pv
    return T


def reward(D, lo, hi):
    r = np.zeros(4 * D)
    for d in range(1, D + 1):
        row = [0, 0, 0, 0]
        if d >= hi:
            row = [1, 1, 1, 1]
        elif d >= lo:
            row = [0, 0, 1, 1]
        elif d == lo - 1:
            row = [0, 0, 1, 0]
        r[(d - 1) * 4:(d - 1) * 4 + 4] = row
    return r


def lp_gain(T, cost):
    S, A, _ = T.shape
    n = S * A
    A_eq = np.zeros((S + 1, n))
    for j in range(S):
        for s in range(S):
            for a in range(A):
                A_eq[j, s * A + a] = (1.0 if s == j else 0.0) - T[s, a, j]
    A_eq[S, :] = 1.0
    b_eq = np.zeros(S + 1)
    b_eq[S] = 1.0
    res = linprog(cost.reshape(-1), A_eq=A_eq, b_eq=b_eq, bounds=(0, None), method="highs",
                  options={"primal_feasibility_tolerance": 1e-10, "dual_feasibility_tolerance": 1e-10})
    assert res.status == 0, res.message
    return res.fun


for D, lo, hi in INSTANCES:
    T = kernel(D)
    r = reward(D, lo, hi)
    gains = []
    for lam in LAMBDAS:
        cost = np.stack([r + lam * C_A, r + lam * C_B, r], axis=1)
        gains.append(lp_gain(T, cost))
    print("    {%d, %d, %d, {%s}}," % (D, lo, hi, ", ".join("%.12g" % g for g in gains)))
