"""Shared helpers: random state generators and quadrature oracles.

Measure convention used by the integral checks: the Wigner function and the
heterodyne outcome density are normalized against the per-mode complex
measure d^2 alpha = dx dy / 2, so integrals over the raw quadrature measure
come out as 2^n times the normalized value.
"""

import numpy as np
import pytest

from gaussiana import core, transforms


def random_symplectic(n_modes: int, rng: np.random.Generator, depth: int = 4) -> np.ndarray:
    """Random symplectic built from squeezers, rotations and beam splitters."""
    f = np.eye(2 * n_modes)
    for _ in range(depth):
        k = int(rng.integers(0, n_modes))
        f = transforms.embed(
            transforms.squeezer_single(rng.uniform(-0.8, 0.8), rng.uniform(0, 2 * np.pi)),
            [k], n_modes,
        ) @ f
        f = transforms.embed(
            transforms.phase_rotation(rng.uniform(0, 2 * np.pi)), [k], n_modes
        ) @ f
        if n_modes > 1:
            i, j = rng.choice(n_modes, size=2, replace=False)
            f = transforms.embed(
                transforms.beam_splitter(rng.uniform(0, np.pi), rng.uniform(0, 2 * np.pi)),
                [int(i), int(j)], n_modes,
            ) @ f
    return f


def random_physical_cov(
    n_modes: int, rng: np.random.Generator, pure: bool = False
) -> np.ndarray:
    """S W S^T with W a random thermal core (W = I/2 when pure)."""
    f = random_symplectic(n_modes, rng)
    d = np.full(n_modes, 0.5) if pure else 0.5 + rng.exponential(0.4, n_modes)
    w = np.kron(np.diag(d), np.eye(2))
    return f @ w @ f.T


def random_state(n_modes: int, rng: np.random.Generator, pure: bool = False):
    cov = random_physical_cov(n_modes, rng, pure=pure)
    return core.GaussianState(cov, rng.normal(0, 0.7, 2 * n_modes))


def gauss_hermite_integral(func, dim: int, center, scale: float, order: int) -> float:
    """Integrate func over R^dim with tensor Gauss-Hermite nodes.

    func must accept an (npoints, dim) array.  scale must exceed
    sqrt(2 * largest variance) of the integrand (weight stability) but should
    stay close to it: widely scaled nodes resolve the integrand poorly.
    Evaluation is chunked over the first axis to bound memory in 4D.
    """
    t, w = np.polynomial.hermite.hermgauss(order)
    logw = np.log(w)
    center = np.asarray(center, dtype=float)
    if dim == 1:
        vals = func(center + scale * t[:, None])
        return float(scale * np.sum(np.exp(logw + t**2) * vals))
    grids = np.meshgrid(*([t] * (dim - 1)), indexing="ij")
    rest = np.stack([g.ravel() for g in grids], axis=-1)
    wgrids = np.meshgrid(*([logw] * (dim - 1)), indexing="ij")
    logw_rest = sum(g.ravel() for g in wgrids) + np.sum(rest**2, axis=1)
    total = 0.0
    for i in range(order):
        pts = np.concatenate([np.full((rest.shape[0], 1), t[i]), rest], axis=1)
        logweight = logw[i] + t[i] ** 2 + logw_rest
        total += float(np.sum(np.exp(logweight) * func(center + scale * pts)))
    return float(scale**dim * total)


def gauss_hermite_rotated(func, center, cov_like: np.ndarray, order: int, pad: float = 1.15) -> float:
    """Gauss-Hermite integration with axes aligned to cov_like's eigenbasis.

    Anisotropic integrands (squeezed states) need per-axis node scaling; the
    eigenbasis supplies coordinates only, the integrand itself is whatever
    ``func`` evaluates.  func takes an (npoints, dim) array.
    """
    evals, evecs = np.linalg.eigh(cov_like)
    scales = pad * np.sqrt(2.0 * evals)
    transform = evecs * scales  # columns scaled
    dim = cov_like.shape[0]
    t, w = np.polynomial.hermite.hermgauss(order)
    logw = np.log(w)
    center = np.asarray(center, dtype=float)
    grids = np.meshgrid(*([t] * (dim - 1)), indexing="ij")
    rest = np.stack([g.ravel() for g in grids], axis=-1)
    wgrids = np.meshgrid(*([logw] * (dim - 1)), indexing="ij")
    logw_rest = sum(g.ravel() for g in wgrids) + np.sum(rest**2, axis=1)
    total = 0.0
    for i in range(order):
        nodes = np.concatenate([np.full((rest.shape[0], 1), t[i]), rest], axis=1)
        logweight = logw[i] + t[i] ** 2 + logw_rest
        pts = center + nodes @ transform.T
        total += float(np.sum(np.exp(logweight) * func(pts)))
    return float(np.prod(scales) * total)


def gaussian_pdf_rows(points: np.ndarray, mean: np.ndarray, cov: np.ndarray) -> np.ndarray:
    """Vectorized Wigner-style Gaussian exp{-dx Sigma^-1 dx / 2}/(pi^n sqrt(det))."""
    n = cov.shape[0] // 2
    dx = points - mean
    sol = np.linalg.solve(cov, dx.T).T
    quad = np.sum(dx * sol, axis=1)
    return np.exp(-0.5 * quad) / (np.pi**n * np.sqrt(np.linalg.det(cov)))


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20260810)
