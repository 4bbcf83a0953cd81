"""Symplectic matrices of the elementary Gaussian operations.

Builders return plain ndarrays; :func:`apply` embeds a k-mode transform into
an n-mode state.  Quadrature blocks follow the interleaved ``(q, p)`` per-mode
ordering of :mod:`gaussiana.core`.
"""

from __future__ import annotations

import numpy as np

from .core import GaussianState, is_symplectic
from .exceptions import PhysicsError


def displacement(shift: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Displacement as an (F, d) pair: identity matrix plus phase-space shift.

    ``shift`` is a real 2k-vector in the (q, p) interleaved ordering; for a
    complex amplitude alpha on one mode it equals sqrt(2) * (Re a, Im a).
    """
    shift = np.asarray(shift, dtype=float).reshape(-1)
    if shift.shape[0] % 2 != 0:
        raise ValueError("displacement vector must have even length")
    return np.eye(shift.shape[0]), shift


def phase_rotation(theta: float) -> np.ndarray:
    """2x2 phase-shift matrix [[cos t, sin t], [-sin t, cos t]]."""
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, s], [-s, c]])


def beam_splitter(phi: float, theta: float = 0.0) -> np.ndarray:
    """4x4 two-mode mixer with transmissivity cos(phi)^2 and phase theta.

    Block form [[cos(phi) I2, sin(phi) R], [-sin(phi) R^T, cos(phi) I2]] with
    R the phase rotation; orthogonal, hence a passive device.
    """
    c, s = np.cos(phi), np.sin(phi)
    r = phase_rotation(theta)
    out = np.zeros((4, 4))
    out[:2, :2] = c * np.eye(2)
    out[:2, 2:] = s * r
    out[2:, :2] = -s * r.T
    out[2:, 2:] = c * np.eye(2)
    return out


def _squeeze_kernel(r: float, psi: float) -> np.ndarray:
    return np.sinh(r) * np.array(
        [[np.cos(psi), np.sin(psi)], [np.sin(psi), -np.cos(psi)]]
    )


def squeezer_single(r: float, psi: float = 0.0) -> np.ndarray:
    """2x2 single-mode squeezer cosh(r) I2 + sinh(r) [[cos p, sin p], [sin p, -cos p]].

    Negative ``r`` is accepted and equivalent to ``psi -> psi + pi``.
    """
    return np.cosh(r) * np.eye(2) + _squeeze_kernel(r, psi)


def squeezer_two_mode(r: float, psi: float = 0.0) -> np.ndarray:
    """4x4 two-mode squeezer [[cosh(r) I2, R], [R, cosh(r) I2]] with R the
    single-mode squeeze kernel."""
    out = np.zeros((4, 4))
    kern = _squeeze_kernel(r, psi)
    out[:2, :2] = np.cosh(r) * np.eye(2)
    out[2:, 2:] = np.cosh(r) * np.eye(2)
    out[:2, 2:] = kern
    out[2:, :2] = kern
    return out


def embed(
    f: np.ndarray, modes: list[int] | tuple[int, ...], n_modes: int
) -> np.ndarray:
    """Embed a 2k x 2k matrix acting on ``modes`` into the identity on
    ``n_modes`` modes."""
    modes = list(modes)
    if len(set(modes)) != len(modes):
        raise ValueError("duplicate mode indices")
    if any(m < 0 or m >= n_modes for m in modes):
        raise ValueError("mode index out of range")
    f = np.asarray(f, dtype=float)
    if f.shape != (2 * len(modes), 2 * len(modes)):
        raise ValueError(
            f"matrix shape {f.shape} does not match {len(modes)} selected modes"
        )
    full = np.eye(2 * n_modes)
    for a, ma in enumerate(modes):
        for b, mb in enumerate(modes):
            full[2 * ma : 2 * ma + 2, 2 * mb : 2 * mb + 2] = f[
                2 * a : 2 * a + 2, 2 * b : 2 * b + 2
            ]
    return full


def apply(
    state: GaussianState,
    f: np.ndarray,
    d: np.ndarray | None = None,
    modes: list[int] | tuple[int, ...] | None = None,
    tol: float = 1e-8,
) -> GaussianState:
    """Apply a symplectic transform plus displacement to selected modes.

    Returns a new state with ``cov -> F cov F^T`` and ``mean -> F mean + d``,
    where F is ``f`` embedded into the identity on unselected modes.
    """
    f = np.asarray(f, dtype=float)
    k = f.shape[0] // 2
    if modes is None:
        modes = list(range(k))
    if not is_symplectic(f, tol):
        raise PhysicsError("transform matrix is not symplectic")
    full = embed(f, modes, state.n_modes)
    shift = np.zeros(2 * state.n_modes)
    if d is not None:
        d = np.asarray(d, dtype=float).reshape(-1)
        if d.shape[0] != 2 * k:
            raise ValueError(f"displacement length {d.shape[0]}, expected {2 * k}")
        for a, m in enumerate(modes):
            shift[2 * m : 2 * m + 2] = d[2 * a : 2 * a + 2]
    cov = full @ state.cov @ full.T
    mean = full @ state.mean + shift
    return GaussianState(cov, mean)
