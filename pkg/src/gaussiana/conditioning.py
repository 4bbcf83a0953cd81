"""Conditional Gaussian measurements on one mode of a multimode state.

The measured mode is permuted to the front so the Schur-complement update
applies verbatim: the conditional covariance is B - C^T (A + S_m)^{-1} C and
the outcome enters only through the conditional means.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import GaussianState
from .exceptions import PhysicsError
from .transforms import phase_rotation

POVM_TOL = 1e-9


@dataclass(frozen=True)
class GaussianPovm:
    """Gaussian POVM element: a 2x2 measurement covariance plus the outcome."""

    sigma_m: np.ndarray
    outcome: np.ndarray

    def __post_init__(self) -> None:
        sigma_m = np.asarray(self.sigma_m, dtype=float)
        outcome = np.asarray(self.outcome, dtype=float).reshape(-1)
        if sigma_m.shape != (2, 2):
            raise ValueError("measurement covariance must be 2x2")
        if outcome.shape != (2,):
            raise ValueError("outcome must be a 2-vector")
        if np.max(np.abs(sigma_m - sigma_m.T)) > POVM_TOL:
            raise ValueError("measurement covariance must be symmetric")
        w = np.array([[0.0, 1.0], [-1.0, 0.0]])
        evals = np.linalg.eigvalsh(sigma_m + 0.5j * w)
        if evals.min() < -POVM_TOL:
            raise PhysicsError("measurement covariance violates the uncertainty bound")
        sigma_m = sigma_m.copy()
        outcome = outcome.copy()
        sigma_m.setflags(write=False)
        outcome.setflags(write=False)
        object.__setattr__(self, "sigma_m", sigma_m)
        object.__setattr__(self, "outcome", outcome)


def heterodyne_povm(outcome: complex) -> GaussianPovm:
    """Double-homodyne projection onto the coherent state at ``outcome``."""
    outcome = complex(outcome)
    x = np.sqrt(2.0) * np.array([outcome.real, outcome.imag])
    return GaussianPovm(0.5 * np.eye(2), x)


def homodyne_povm(angle: float, outcome: float, s: float = 1e-6) -> GaussianPovm:
    """Quadrature measurement at ``angle`` as the squeezed limit s -> 0.

    sigma_m = R^T diag(s, 1/(4s)) R; the POVM is centered on the measured
    quadrature axis.  ``s`` must stay positive (the singular limit is not
    represented).
    """
    if s <= 0:
        raise ValueError("squeeze parameter s must be positive")
    r = phase_rotation(angle)
    sigma_m = r.T @ np.diag([s, 1.0 / (4.0 * s)]) @ r
    x = float(outcome) * np.array([np.cos(angle), np.sin(angle)])
    return GaussianPovm(sigma_m, x)


def _mode_permutation(n_modes: int, first: int) -> np.ndarray:
    """Symplectic permutation moving ``first`` to the front, preserving the
    relative order of the remaining modes."""
    order = [first] + [m for m in range(n_modes) if m != first]
    perm = np.zeros((2 * n_modes, 2 * n_modes))
    for new, old in enumerate(order):
        perm[2 * new : 2 * new + 2, 2 * old : 2 * old + 2] = np.eye(2)
    return perm


def condition(
    state: GaussianState, mode: int, povm: GaussianPovm
) -> tuple[GaussianState, float]:
    """Measure one mode; return the conditional state and the outcome density.

    density = exp{-(1/2) (X - m)^T (A + S_m)^{-1} (X - m)} / (pi sqrt(det(A + S_m)))
    where A and m are the measured mode's covariance block and mean.
    """
    n = state.n_modes
    if n < 2:
        raise ValueError("conditioning requires at least two modes")
    if mode < 0 or mode >= n:
        raise ValueError("mode index out of range")

    perm = _mode_permutation(n, mode)
    cov = perm @ state.cov @ perm.T
    mean = perm @ state.mean

    a = cov[:2, :2]
    c = cov[:2, 2:]
    b = cov[2:, 2:]
    gate = a + povm.sigma_m
    det_gate = float(np.linalg.det(gate))
    if det_gate <= 0 or abs(det_gate) < 1e-300:
        raise PhysicsError("singular measured-block matrix A + sigma_m")
    gate_inv = np.linalg.inv(gate)

    cov_out = b - c.T @ gate_inv @ c
    shift = povm.outcome - mean[:2]
    mean_out = mean[2:] + c.T @ gate_inv @ shift
    density = float(
        np.exp(-0.5 * shift @ gate_inv @ shift) / (np.pi * np.sqrt(det_gate))
    )
    return GaussianState(cov_out, mean_out), density
