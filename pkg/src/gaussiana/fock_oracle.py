"""Truncated Fock-space brute force used by the test suite.

Everything here works on dense density matrices in the number basis, built
from matrix exponentials of the interaction generators.  It deliberately
shares no code with the covariance-matrix fast paths it is used to check.
Results carry truncation error of the order of the trace deficit.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np
from scipy.linalg import expm

from .exceptions import PhysicsError


@dataclass(frozen=True)
class FockDensity:
    """Density matrix on the truncated n-mode Fock space."""

    cutoff: int
    n_modes: int
    rho: np.ndarray

    def __post_init__(self) -> None:
        dim = self.cutoff**self.n_modes
        if self.rho.shape != (dim, dim):
            raise ValueError(
                f"rho shape {self.rho.shape} does not match cutoff^n = {dim}"
            )

    @property
    def trace_deficit(self) -> float:
        """1 - Tr[rho]; the natural truncation-tail estimate."""
        return float(1.0 - np.trace(self.rho).real)


def mode_ops(cutoff: int) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Single-mode (a, a_dag, q, p) matrices at the given cutoff."""
    if cutoff < 2:
        raise ValueError("cutoff must be at least 2")
    a = np.diag(np.sqrt(np.arange(1, cutoff)), k=1).astype(complex)
    adag = a.conj().T
    q = (a + adag) / np.sqrt(2.0)
    p = (a - adag) / (1j * np.sqrt(2.0))
    return a, adag, q, p


def _embed(op: np.ndarray, mode: int, n_modes: int, cutoff: int) -> np.ndarray:
    mats = [np.eye(cutoff, dtype=complex)] * n_modes
    mats[mode] = op
    return reduce(np.kron, mats)


def displacement_op(cutoff: int, alpha: complex) -> np.ndarray:
    a, adag, _, _ = mode_ops(cutoff)
    return expm(alpha * adag - np.conj(alpha) * a)


def squeeze_op(cutoff: int, z: complex) -> np.ndarray:
    a, adag, _, _ = mode_ops(cutoff)
    return expm(0.5 * (z * adag @ adag - np.conj(z) * a @ a))


def two_mode_squeeze_op(cutoff: int, z: complex) -> np.ndarray:
    a, adag, _, _ = mode_ops(cutoff)
    a1 = np.kron(adag, adag)
    a2 = np.kron(a, a)
    return expm(z * a1 - np.conj(z) * a2)


def vacuum(cutoff: int, n_modes: int = 1) -> FockDensity:
    dim = cutoff**n_modes
    rho = np.zeros((dim, dim), dtype=complex)
    rho[0, 0] = 1.0
    return FockDensity(cutoff, n_modes, rho)


def thermal(cutoff: int, photons: float) -> FockDensity:
    """Geometric number distribution N^m / (1 + N)^(m+1), left untruncated-
    unnormalized so the trace deficit reports the tail."""
    if photons < 0:
        raise PhysicsError("thermal photon number must be non-negative")
    m = np.arange(cutoff)
    weights = photons**m / (1.0 + photons) ** (m + 1) if photons > 0 else (m == 0) * 1.0
    return FockDensity(cutoff, 1, np.diag(weights.astype(complex)))


def coherent(cutoff: int, alpha: complex) -> FockDensity:
    d = displacement_op(cutoff, alpha)
    vec = d[:, 0]
    return FockDensity(cutoff, 1, np.outer(vec, vec.conj()))


def single_mode_general(
    cutoff: int, alpha: complex = 0.0, r: float = 0.0, psi: float = 0.0, photons: float = 0.0
) -> FockDensity:
    """D(alpha) S(r e^{i psi}) nu(N) S^dag D^dag."""
    rho = thermal(cutoff, photons).rho
    u = displacement_op(cutoff, alpha) @ squeeze_op(cutoff, r * np.exp(1j * psi))
    return FockDensity(cutoff, 1, u @ rho @ u.conj().T)


def two_mode_squeezed_thermal(
    cutoff: int, r: float, photons_1: float = 0.0, photons_2: float = 0.0
) -> FockDensity:
    rho = np.kron(thermal(cutoff, photons_1).rho, thermal(cutoff, photons_2).rho)
    u = two_mode_squeeze_op(cutoff, r)
    return FockDensity(cutoff, 2, u @ rho @ u.conj().T)


def twb(cutoff: int, r: float) -> FockDensity:
    """Twin beam from its Schmidt form sum_m tanh^m(r)/cosh(r) |mm>.

    Closed-form amplitudes keep large cutoffs cheap; the test suite
    cross-checks them against the matrix exponential at a small cutoff.
    """
    m = np.arange(cutoff)
    amps = np.tanh(r) ** m / np.cosh(r)
    vec = np.zeros(cutoff**2, dtype=complex)
    vec[m * cutoff + m] = amps
    return FockDensity(cutoff, 2, np.outer(vec, vec.conj()))


def quadrature_ops(cutoff: int, n_modes: int) -> list[np.ndarray]:
    """The operator vector (q1, p1, ..., qn, pn) embedded on n modes."""
    _, _, q, p = mode_ops(cutoff)
    ops = []
    for k in range(n_modes):
        ops.append(_embed(q, k, n_modes, cutoff))
        ops.append(_embed(p, k, n_modes, cutoff))
    return ops


def cm_of(state: FockDensity) -> tuple[np.ndarray, np.ndarray]:
    """Covariance matrix and first moments from number-basis expectations."""
    ops = quadrature_ops(state.cutoff, state.n_modes)
    dim = 2 * state.n_modes
    mean = np.array([np.trace(state.rho @ op).real for op in ops])
    cov = np.empty((dim, dim))
    for i in range(dim):
        for j in range(i, dim):
            sym = 0.5 * (ops[i] @ ops[j] + ops[j] @ ops[i])
            cov[i, j] = cov[j, i] = np.trace(state.rho @ sym).real - mean[i] * mean[j]
    return cov, mean


def entropy_of(state: FockDensity) -> float:
    """von Neumann entropy -Tr[rho ln rho] (natural log)."""
    evals = np.linalg.eigvalsh(state.rho)
    evals = evals[evals > 1e-14]
    return float(-np.sum(evals * np.log(evals)))


def partial_trace(state: FockDensity, keep: "list[int]") -> FockDensity:
    """Trace out all modes not in ``keep`` (order preserved)."""
    keep = list(keep)
    n, c = state.n_modes, state.cutoff
    tensor = state.rho.reshape((c,) * (2 * n))
    drop = [m for m in range(n) if m not in keep]
    for m in sorted(drop, reverse=True):
        tensor = np.trace(tensor, axis1=m, axis2=m + tensor.ndim // 2)
    dim = c ** len(keep)
    return FockDensity(c, len(keep), tensor.reshape(dim, dim))


def partial_transpose(state: FockDensity, part: int) -> FockDensity:
    """Transpose the indices of one mode (complex conjugation on that factor)."""
    n, c = state.n_modes, state.cutoff
    tensor = state.rho.reshape((c,) * (2 * n))
    tensor = np.swapaxes(tensor, part, part + n)
    dim = c**n
    return FockDensity(c, n, tensor.reshape(dim, dim))


def _psd_sqrt(mat: np.ndarray) -> np.ndarray:
    evals, evecs = np.linalg.eigh(mat)
    evals = np.clip(evals, 0.0, None)
    return (evecs * np.sqrt(evals)) @ evecs.conj().T


def uhlmann_fidelity(state_1: FockDensity, state_2: FockDensity) -> float:
    """(Tr sqrt(sqrt(rho1) rho2 sqrt(rho1)))^2."""
    root = _psd_sqrt(state_1.rho)
    inner = root @ state_2.rho @ root
    evals = np.clip(np.linalg.eigvalsh(inner), 0.0, None)
    return float(np.sum(np.sqrt(evals)) ** 2)


def project_coherent(
    state: FockDensity, mode: int, alpha: complex
) -> tuple[FockDensity, float]:
    """Heterodyne one mode: project onto |alpha>, return the conditional
    state (renormalized) and the outcome density <alpha|rho_k|alpha>/pi."""
    n, c = state.n_modes, state.cutoff
    if n < 2:
        raise ValueError("need at least two modes to condition")
    vec = displacement_op(c, alpha)[:, 0]
    tensor = state.rho.reshape((c,) * (2 * n))
    tensor = np.tensordot(vec.conj(), tensor, axes=([0], [mode]))
    tensor = np.tensordot(vec, tensor, axes=([0], [mode + n - 1]))
    dim = c ** (n - 1)
    reduced = tensor.reshape(dim, dim)
    weight = float(np.trace(reduced).real)
    density = weight / np.pi
    return FockDensity(c, n - 1, reduced / weight), density


def parity_op(cutoff: int, n_modes: int) -> np.ndarray:
    par = np.diag((-1.0 + 0j) ** np.arange(cutoff))
    return reduce(np.kron, [par] * n_modes)


def wigner_trace(state: FockDensity, x: np.ndarray) -> float:
    """(2/pi)^n Tr[rho D(X) Pi D^dag(X)] via displacement and parity."""
    x = np.asarray(x, dtype=float).reshape(-1)
    n, c = state.n_modes, state.cutoff
    if x.shape[0] != 2 * n:
        raise ValueError("phase-space point has wrong length")
    disp = reduce(
        np.kron,
        [
            displacement_op(c, (x[2 * k] + 1j * x[2 * k + 1]) / np.sqrt(2.0))
            for k in range(n)
        ],
    )
    kernel = disp @ parity_op(c, n) @ disp.conj().T
    return float((2.0 / np.pi) ** n * np.trace(state.rho @ kernel).real)


def build_state(name: str, cutoff: int, **params) -> FockDensity:
    """Build a named state (same vocabulary as the CLI state specs)."""
    if name == "vacuum":
        return vacuum(cutoff, int(params.get("n", 1)))
    if name == "thermal":
        photons = params["photons"]
        if np.isscalar(photons):
            return thermal(cutoff, float(photons))
        densities = [thermal(cutoff, float(p)).rho for p in photons]
        return FockDensity(cutoff, len(densities), reduce(np.kron, densities))
    if name == "coherent":
        alphas = params["alpha"]
        if np.isscalar(alphas):
            return coherent(cutoff, complex(alphas))
        densities = [coherent(cutoff, complex(a)).rho for a in alphas]
        return FockDensity(cutoff, len(densities), reduce(np.kron, densities))
    if name == "dsts":
        return single_mode_general(
            cutoff,
            alpha=complex(params.get("alpha", 0.0)),
            r=float(params.get("r", 0.0)),
            psi=float(params.get("psi", 0.0)),
            photons=float(params.get("photons", 0.0)),
        )
    if name == "tmst":
        return two_mode_squeezed_thermal(
            cutoff,
            r=float(params.get("r", 0.0)),
            photons_1=float(params.get("photons_1", 0.0)),
            photons_2=float(params.get("photons_2", 0.0)),
        )
    if name == "twb":
        return twb(cutoff, float(params.get("r", 0.0)))
    raise ValueError(f"unknown state name {name!r}")
