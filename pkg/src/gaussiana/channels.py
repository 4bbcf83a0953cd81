"""Closed-form Markovian Gaussian channel dynamics.

Each mode couples to its own bath characterized by a damping rate, an
effective photon number N and a complex squeezing M with |M|^2 <= N(N + 1).
The covariance matrix relaxes affinely toward the bath diffusion matrix; no
integrator is involved.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import GaussianState
from .exceptions import PhysicsError

M_CONSTRAINT_TOL = 1e-12


@dataclass(frozen=True)
class ChannelParams:
    """Bath parameters: damping rate, thermal photons and complex squeezing."""

    gamma: float
    photons: float = 0.0
    squeezing: complex = 0.0

    def __post_init__(self) -> None:
        if self.gamma < 0:
            raise PhysicsError("damping rate must be non-negative")
        if self.photons < 0:
            raise PhysicsError("bath photon number must be non-negative")
        m2 = abs(complex(self.squeezing)) ** 2
        bound = self.photons * (self.photons + 1.0)
        if m2 > bound + M_CONSTRAINT_TOL:
            raise PhysicsError(
                f"|M|^2 = {m2:.6g} exceeds N(N+1) = {bound:.6g}; bath is unphysical"
            )


def diffusion_matrix(params: ChannelParams) -> np.ndarray:
    """Asymptotic 2x2 covariance of the bath."""
    m = complex(params.squeezing)
    base = 0.5 + params.photons
    return np.array([[base + m.real, m.imag], [m.imag, base - m.real]])


def evolve_single(state: GaussianState, params: ChannelParams, t: float) -> GaussianState:
    """Evolve a single-mode state for time t:
    cov_t = e^{-G t} cov_0 + (1 - e^{-G t}) cov_inf, mean_t = e^{-G t / 2} mean_0.
    """
    if state.n_modes != 1:
        raise ValueError("evolve_single expects a single-mode state")
    return evolve_multi(state, [params], t)


def evolve_multi(
    state: GaussianState, params: "list[ChannelParams]", t: float
) -> GaussianState:
    """Evolve an n-mode state through n uncorrelated baths for time t."""
    if t < 0:
        raise ValueError("time must be non-negative")
    if len(params) != state.n_modes:
        raise ValueError(
            f"{len(params)} bath parameter sets for {state.n_modes} modes"
        )
    decay = np.repeat([np.exp(-p.gamma * t) for p in params], 2)
    root = np.sqrt(decay)
    cov_inf = np.zeros_like(np.asarray(state.cov))
    for k, p in enumerate(params):
        cov_inf[2 * k : 2 * k + 2, 2 * k : 2 * k + 2] = diffusion_matrix(p)
    cov = np.outer(root, root) * state.cov + np.diag(1.0 - decay) @ cov_inf
    mean = root * state.mean
    return GaussianState(cov, mean)
