"""Factories for the named Gaussian states.

Covariance matrices are written in closed form; the test suite cross-checks
them against the equivalent transform compositions.
"""

from __future__ import annotations

import numpy as np

from .core import GaussianState
from .exceptions import PhysicsError


def vacuum(n_modes: int) -> GaussianState:
    """n-mode vacuum: cov = I/2, zero means."""
    if n_modes < 1:
        raise ValueError("n_modes must be a positive integer")
    return GaussianState(0.5 * np.eye(2 * n_modes))


def thermal(photons: "list[float] | np.ndarray") -> GaussianState:
    """Product of thermal states with the given mean photon numbers."""
    photons = np.asarray(photons, dtype=float).reshape(-1)
    if photons.size == 0:
        raise ValueError("at least one mode required")
    if np.any(photons < 0):
        raise PhysicsError("thermal photon numbers must be non-negative")
    diag = np.repeat(0.5 + photons, 2)
    return GaussianState(np.diag(diag))


def coherent(alphas: "list[complex] | np.ndarray") -> GaussianState:
    """Product of coherent states; mean_k = sqrt(2) (Re a_k, Im a_k)."""
    alphas = np.asarray(alphas, dtype=complex).reshape(-1)
    if alphas.size == 0:
        raise ValueError("at least one mode required")
    mean = np.empty(2 * alphas.size)
    mean[0::2] = np.sqrt(2.0) * alphas.real
    mean[1::2] = np.sqrt(2.0) * alphas.imag
    return GaussianState(0.5 * np.eye(2 * alphas.size), mean)


def single_mode_general(
    alpha: complex = 0.0, r: float = 0.0, psi: float = 0.0, photons: float = 0.0
) -> GaussianState:
    """Displaced squeezed thermal state D(alpha) S(r e^{i psi}) nu(N) and back.

    Covariance elements:
        cov_kk = (1 + 2N)/2 * [cosh 2r - (-1)^k sinh 2r cos psi]
        cov_12 = (1 + 2N)/2 * sinh 2r sin psi
    """
    if photons < 0:
        raise PhysicsError("thermal photon number must be non-negative")
    alpha = complex(alpha)
    scale = 0.5 * (1.0 + 2.0 * photons)
    ch, sh = np.cosh(2.0 * r), np.sinh(2.0 * r)
    cov = scale * np.array(
        [
            [ch + sh * np.cos(psi), sh * np.sin(psi)],
            [sh * np.sin(psi), ch - sh * np.cos(psi)],
        ]
    )
    mean = np.sqrt(2.0) * np.array([alpha.real, alpha.imag])
    return GaussianState(cov, mean)


def two_mode_squeezed_thermal(
    r: float, photons_1: float = 0.0, photons_2: float = 0.0
) -> GaussianState:
    """Two-mode squeezer (real squeezing r) applied to a pair of thermal states.

    cov = (1/2) [[A I2, C G], [C G, B I2]] with G = diag(1, -1) and
        A = (1 + N1 + N2) cosh 2r + (N1 - N2)
        B = (1 + N1 + N2) cosh 2r - (N1 - N2)
        C = (1 + N1 + N2) sinh 2r
    """
    if photons_1 < 0 or photons_2 < 0:
        raise PhysicsError("thermal photon numbers must be non-negative")
    tot = 1.0 + photons_1 + photons_2
    a = tot * np.cosh(2.0 * r) + (photons_1 - photons_2)
    b = tot * np.cosh(2.0 * r) - (photons_1 - photons_2)
    c = tot * np.sinh(2.0 * r)
    cov = np.zeros((4, 4))
    cov[:2, :2] = 0.5 * a * np.eye(2)
    cov[2:, 2:] = 0.5 * b * np.eye(2)
    off = 0.5 * c * np.diag([1.0, -1.0])
    cov[:2, 2:] = off
    cov[2:, :2] = off
    return GaussianState(cov)


def twb(r: float) -> GaussianState:
    """Twin-beam state (two-mode squeezed vacuum) with squeezing r."""
    return two_mode_squeezed_thermal(r, 0.0, 0.0)
