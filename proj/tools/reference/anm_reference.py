#!/usr/bin/env python3
"""Reference values for the ANM dual program on small instances.

Solves

    min_{G,W}  tr[(C - G) R (C - G)^H],   C = Y D^H,  R = (D D^H)^{-1}
    s.t.       [[W, G], [G^H, rho I]] >= 0
               tr(W) = beta^2 / (rho N)
               sum_m W[m, m+v] = 0   for v != 0

with a generic interior-point solver (CVXPY + Clarabel) and writes the
instances together with the optimal objective to a JSON fixture that the
C++ acceptance suite reads. Run once; the output is checked in.

    python3 tools/reference/anm_reference.py tests/data/anm_reference.json
"""
import json
import sys

import cvxpy as cp
import numpy as np

N, M, L = 8, 4, 8
RHO = 1000.0
BETA = float(np.sqrt(1000.0 * N))
THETA_BI = np.deg2rad(-60.0)


def ula(n, omega):
    return np.exp(-1j * np.arange(n) * omega)


def make_instance(seed):
    rng = np.random.default_rng(seed)
    D = np.exp(2j * np.pi * rng.random((N, L)))
    angles = np.sort(rng.uniform(-np.pi / 3, np.pi / 3, 2))
    Y = np.zeros((M, L), dtype=complex)
    for th in angles:
        gain = rng.uniform(0.5, 1.5) * np.exp(2j * np.pi * rng.random())
        b = ula(M, np.pi * np.sin(th))
        a = ula(N, np.pi * (np.sin(th) - np.sin(THETA_BI)))
        Y += gain * np.outer(b, a.conj()) @ D
    Y += 0.05 * (rng.standard_normal((M, L)) + 1j * rng.standard_normal((M, L)))
    return Y, D, angles


def _program(C, chol, rho, trace_w, scale):
    G = cp.Variable((M, N), complex=True)
    W = cp.Variable((M, M), hermitian=True)
    S = cp.bmat([[W, G], [G.H, rho * np.eye(N)]])
    cons = [S >> 0, cp.real(cp.trace(W)) == trace_w]
    for v in range(1, M):
        cons.append(sum(W[m, m + v] for m in range(M - v)) == 0)
    prob = cp.Problem(cp.Minimize(cp.sum_squares((C / scale - G) @ chol)), cons)
    prob.solve(solver="CLARABEL")
    return prob, G


def solve(Y, D):
    C = Y @ D.conj().T
    R = np.linalg.inv(D @ D.conj().T)
    R = 0.5 * (R + R.conj().T)
    chol = np.linalg.cholesky(R)
    w = BETA**2 / (RHO * N)
    s = np.sqrt(w * RHO)

    # The literal program mixes a rho*I block (1000) with tr(W) = 1, which the
    # interior-point method only solves to "optimal_inaccurate". The congruence
    # diag(I/sqrt(w), I/sqrt(rho)) maps it to an equivalent well-scaled program
    # with G' = G/s, W' = W/w; that one is the reference value.
    scaled, Gs = _program(C, chol, 1.0, 1.0, s)
    if scaled.status != cp.OPTIMAL:
        raise RuntimeError(f"reference solve failed: {scaled.status}")
    value = float(scaled.value * s * s)

    literal, _ = _program(C, chol, RHO, w, 1.0)
    agreement = abs(literal.value - value) / value
    gap = np.linalg.norm(C - s * Gs.value) / np.linalg.norm(C)
    print(f"  literal program: {literal.status}, rel. difference {agreement:.1e}")
    return value, gap


def cplx(A):
    return {"re": np.real(A).tolist(), "im": np.imag(A).tolist()}


def main(path):
    out = {
        "solver": "cvxpy/clarabel " + cp.__version__,
        "n_res": N, "n_ses": M, "n_slots": L,
        "rho": RHO, "beta": BETA,
        "irs_arrival_angle_deg": float(np.rad2deg(THETA_BI)),
        "instances": [],
    }
    for seed in range(5):
        Y, D, angles = make_instance(100 + seed)
        obj, gap = solve(Y, D)
        print(f"seed {100 + seed}: objective {obj:.12g}  |C-G|/|C| {gap:.3f}")
        out["instances"].append({
            "seed": 100 + seed,
            "angles_deg": np.rad2deg(angles).tolist(),
            "Y": cplx(Y), "D": cplx(D),
            "objective": obj,
        })
    with open(path, "w") as fh:
        json.dump(out, fh, indent=1)


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "anm_reference.json")
