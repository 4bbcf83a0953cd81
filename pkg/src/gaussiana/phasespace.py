"""Characteristic, Wigner and s-ordered Wigner functions; phase-space moments.

The Wigner function of a Gaussian state is the Gaussian
``exp{-(1/2)(X - m)^T cov^{-1} (X - m)} / (pi^n sqrt(det cov))``; it is
normalized with respect to the per-mode complex measure d^2 alpha = dx dy / 2
(equivalently, its integral over the real quadrature measure is 2^n).
"""

from __future__ import annotations

import numpy as np

from . import core
from .core import GaussianState


def characteristic(state: GaussianState, lam: np.ndarray, form: str = "plain") -> complex:
    """Characteristic function at the real 2n-vector ``lam``.

    "plain" evaluates exp{-(1/2) L^T cov L - i L^T mean}; "omega" evaluates
    the Omega-twisted variant exp{-(1/2) L^T W cov W^T L - i L^T W mean}.
    """
    lam = np.asarray(lam, dtype=float).reshape(-1)
    if lam.shape[0] != 2 * state.n_modes:
        raise ValueError("argument length does not match the state")
    if form == "omega":
        lam = core.omega(state.n_modes).T @ lam
    elif form != "plain":
        raise ValueError("form must be 'plain' or 'omega'")
    return complex(
        np.exp(-0.5 * lam @ state.cov @ lam - 1j * (lam @ state.mean))
    )


def wigner(state: GaussianState, x: np.ndarray) -> float:
    """Wigner function at the phase-space point ``x``."""
    return wigner_s(state, x, 0.0)


def wigner_s(state: GaussianState, x: np.ndarray, s: float) -> float:
    """s-ordered Wigner function; Gaussian with effective CM cov - (s/2) I.

    s = 0 is the Wigner function, s = -1 the Husimi Q, s = 1 the
    Glauber-Sudarshan P (when it exists as a Gaussian).
    """
    x = np.asarray(x, dtype=float).reshape(-1)
    n = state.n_modes
    if x.shape[0] != 2 * n:
        raise ValueError("argument length does not match the state")
    eff = state.cov - 0.5 * s * np.eye(2 * n)
    evals = np.linalg.eigvalsh(eff)
    if evals.min() <= 0:
        raise ValueError(
            f"s = {s} exceeds the positivity bound s < {2.0 * np.linalg.eigvalsh(state.cov).min():.6g} "
            "(cov - (s/2) I must stay positive definite)"
        )
    dx = x - state.mean
    det = np.prod(evals)
    return float(
        np.exp(-0.5 * dx @ np.linalg.solve(eff, dx)) / (np.pi**n * np.sqrt(det))
    )


def nonclassical_depth(state: GaussianState) -> float:
    """max{0, (1 - 2 lambda_min(cov)) / 2}: thermal photons needed to wash
    out all nonclassical features.  Gaussian-state specialization; saturates
    at 0 for coherent and thermal states."""
    lam_min = float(np.linalg.eigvalsh(state.cov).min())
    return max(0.0, 0.5 * (1.0 - 2.0 * lam_min))


def _complex_pair_stats(
    state: GaussianState, factors: "list[tuple[int, bool]]"
) -> tuple[np.ndarray, np.ndarray]:
    """Means and plain (unconjugated) covariances of the complex variables
    alpha_k = (x_k + i y_k)/sqrt(2), conjugated where flagged."""
    m = len(factors)
    means = np.empty(m, dtype=complex)
    for i, (mode, conj) in enumerate(factors):
        q, p = state.mean[2 * mode], state.mean[2 * mode + 1]
        means[i] = (q - 1j * p) / np.sqrt(2.0) if conj else (q + 1j * p) / np.sqrt(2.0)
    cov = np.empty((m, m), dtype=complex)
    for i, (mi, ci) in enumerate(factors):
        si = -1.0 if ci else 1.0
        for j, (mj, cj) in enumerate(factors):
            sj = -1.0 if cj else 1.0
            qq = state.cov[2 * mi, 2 * mj]
            qp = state.cov[2 * mi, 2 * mj + 1]
            pq = state.cov[2 * mi + 1, 2 * mj]
            pp = state.cov[2 * mi + 1, 2 * mj + 1]
            cov[i, j] = 0.5 * (qq - si * sj * pp + 1j * (sj * qp + si * pq))
    return means, cov


def wigner_moment(state: GaussianState, factors: "list[tuple[int, bool]]") -> complex:
    """Expectation of a product of alpha / alpha* factors under the Wigner
    density, i.e. a symmetrically ordered moment of the mode operators.

    ``factors`` lists (mode, conjugate) pairs; the moment is computed by the
    Wick/Isserlis recursion over the complex means and plain covariances.
    """
    for mode, _ in factors:
        if mode < 0 or mode >= state.n_modes:
            raise ValueError("mode index out of range")
    means, cov = _complex_pair_stats(state, factors)

    def moment(idx: "tuple[int, ...]") -> complex:
        if not idx:
            return 1.0 + 0.0j
        head, rest = idx[0], idx[1:]
        total = means[head] * moment(rest)
        for pos, j in enumerate(rest):
            total += cov[head, j] * moment(rest[:pos] + rest[pos + 1 :])
        return total

    return complex(moment(tuple(range(len(factors)))))


def symmetric_moment(
    state: GaussianState, mode_s: int, mode_t: int, h: int, k: int
) -> complex:
    """Symmetrically ordered moment <[(a_s^dag)^h a_t^k]_sym>, orders h + k <= 4."""
    if h < 0 or k < 0 or h + k > 4:
        raise ValueError("supported orders are h, k >= 0 with h + k <= 4")
    factors = [(mode_s, True)] * h + [(mode_t, False)] * k
    return wigner_moment(state, factors)


def wigner_grid(
    state: GaussianState,
    modes: "int | tuple[int, int]",
    ranges: "tuple[tuple[float, float], tuple[float, float]]",
    resolution: "int | tuple[int, int]" = 64,
) -> np.ndarray:
    """Evaluate a Wigner surface on a rectangular grid.

    ``modes`` is either a single mode index (grid over that mode's q-p plane)
    or a pair of quadrature-axis indices into the vector (q1, p1, ...); all
    other axes are marginalized analytically.  Returns rows (x, y, w) with x
    as the outer loop.
    """
    if isinstance(modes, (int, np.integer)):
        if modes < 0 or modes >= state.n_modes:
            raise ValueError("mode index out of range")
        axes = (2 * int(modes), 2 * int(modes) + 1)
    else:
        axes = (int(modes[0]), int(modes[1]))
        if len(set(axes)) != 2 or any(a < 0 or a >= 2 * state.n_modes for a in axes):
            raise ValueError("quadrature axes must be two distinct in-range indices")
    (x_lo, x_hi), (y_lo, y_hi) = ranges
    if not (x_hi > x_lo and y_hi > y_lo):
        raise ValueError("ranges must be increasing intervals")
    if isinstance(resolution, (int, np.integer)):
        nx = ny = int(resolution)
    else:
        nx, ny = int(resolution[0]), int(resolution[1])
    if nx < 2 or ny < 2:
        raise ValueError("resolution must be at least 2 per axis")

    idx = np.array(axes)
    sub_cov = state.cov[np.ix_(idx, idx)]
    sub_mean = state.mean[idx]
    inv = np.linalg.inv(sub_cov)
    norm = 1.0 / (np.pi * np.sqrt(np.linalg.det(sub_cov)))

    xs = np.linspace(x_lo, x_hi, nx)
    ys = np.linspace(y_lo, y_hi, ny)
    rows = np.empty((nx * ny, 3))
    i = 0
    for x in xs:
        dx = x - sub_mean[0]
        for y in ys:
            dy = y - sub_mean[1]
            quad = inv[0, 0] * dx * dx + 2.0 * inv[0, 1] * dx * dy + inv[1, 1] * dy * dy
            rows[i] = (x, y, norm * np.exp(-0.5 * quad))
            i += 1
    return rows
