"""Overlap and Uhlmann fidelity for one- and two-mode Gaussian states."""

from __future__ import annotations

import numpy as np

from . import core
from .core import GaussianState

_ROOT_CLAMP = -1e-12


def _clamped_sqrt(value: float) -> float:
    if value < _ROOT_CLAMP:
        raise ValueError(f"negative invariant {value:.3e} beyond round-off tolerance")
    return float(np.sqrt(max(value, 0.0)))


def overlap(s1: GaussianState, s2: GaussianState) -> float:
    """Tr[rho1 rho2] = exp{-(1/2) dm^T (cov1 + cov2)^{-1} dm} / sqrt(det(cov1 + cov2))."""
    if s1.n_modes != s2.n_modes:
        raise ValueError("states must have the same number of modes")
    total = s1.cov + s2.cov
    dm = s1.mean - s2.mean
    det = np.linalg.det(total)
    return float(np.exp(-0.5 * dm @ np.linalg.solve(total, dm)) / np.sqrt(det))


def fidelity_1m(s1: GaussianState, s2: GaussianState) -> float:
    """Uhlmann fidelity for single-mode states:
    exp{-(1/2) dm^T (cov1 + cov2)^{-1} dm} / (sqrt(D + d) - sqrt(d)) with
    D = det(cov1 + cov2), d = 4 (det cov1 - 1/4)(det cov2 - 1/4).
    """
    if s1.n_modes != 1 or s2.n_modes != 1:
        raise ValueError("fidelity_1m expects single-mode states")
    total = s1.cov + s2.cov
    dm = s1.mean - s2.mean
    big_delta = float(np.linalg.det(total))
    small_delta = 4.0 * (np.linalg.det(s1.cov) - 0.25) * (np.linalg.det(s2.cov) - 0.25)
    small_delta = max(small_delta, 0.0)
    gauss = np.exp(-0.5 * dm @ np.linalg.solve(total, dm))
    return float(gauss / (np.sqrt(big_delta + small_delta) - np.sqrt(small_delta)))


def fidelity_2m(s1: GaussianState, s2: GaussianState) -> float:
    """Uhlmann fidelity for two-mode states:
    Tr[rho1 rho2] (sqrt(X) + sqrt(X - 1))^2 with X = 2 sqrt(A) + 2 sqrt(B) + 1/2,
    A = det(W c1 W c2 - I/4) / det(c1 + c2),
    B = det(c1 + i W / 2) det(c2 + i W / 2) / det(c1 + c2),
    W the symplectic form.
    """
    if s1.n_modes != 2 or s2.n_modes != 2:
        raise ValueError("fidelity_2m expects two-mode states")
    w = core.omega(2)
    total = s1.cov + s2.cov
    det_total = float(np.linalg.det(total))
    inv_a = float(np.linalg.det(w @ s1.cov @ w @ s2.cov - 0.25 * np.eye(4)).real)
    inv_b = float(
        (
            np.linalg.det(s1.cov + 0.5j * w) * np.linalg.det(s2.cov + 0.5j * w)
        ).real
    )
    big_x = (
        2.0 * _clamped_sqrt(inv_a / det_total)
        + 2.0 * _clamped_sqrt(inv_b / det_total)
        + 0.5
    )
    root_x = _clamped_sqrt(big_x)
    root_xm1 = float(np.sqrt(max(big_x - 1.0, 0.0)))
    return float(overlap(s1, s2) * (root_x + root_xm1) ** 2)
