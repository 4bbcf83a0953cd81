"""State record, symplectic form and the basic symplectic decompositions.

Conventions used throughout the package: natural units (no hbar), quadrature
ordering ``(q1, p1, ..., qn, pn)``, vacuum covariance ``0.5 * I``.  A state is
physical iff ``cov + (i/2) * Omega >= 0``, i.e. iff every symplectic
eigenvalue is at least 1/2.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import schur

from .exceptions import PhysicsError

TOL_SYM = 1e-9
TOL_SYMP = 1e-9
TOL_PHYS = 1e-9


def omega(n_modes: int) -> np.ndarray:
    """Symplectic form for ``n_modes`` modes: block diagonal of [[0, 1], [-1, 0]]."""
    if n_modes < 1:
        raise ValueError("n_modes must be a positive integer")
    w = np.zeros((2 * n_modes, 2 * n_modes))
    for k in range(n_modes):
        w[2 * k, 2 * k + 1] = 1.0
        w[2 * k + 1, 2 * k] = -1.0
    return w


def _check_even_square(mat: np.ndarray, name: str = "matrix") -> int:
    mat = np.asarray(mat)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError(f"{name} must be square, got shape {mat.shape}")
    if mat.shape[0] % 2 != 0:
        raise ValueError(f"{name} must have even dimension, got {mat.shape[0]}")
    return mat.shape[0] // 2


def is_symplectic(f: np.ndarray, tol: float = TOL_SYMP) -> bool:
    """True iff ``f @ Omega @ f.T`` equals Omega within ``tol`` (max-norm)."""
    f = np.asarray(f, dtype=float)
    n = _check_even_square(f, "symplectic candidate")
    w = omega(n)
    return bool(np.max(np.abs(f @ w @ f.T - w)) <= tol)


def _check_cov(cov: np.ndarray, tol_sym: float = TOL_SYM) -> np.ndarray:
    cov = np.asarray(cov, dtype=float)
    _check_even_square(cov, "covariance matrix")
    if np.max(np.abs(cov - cov.T)) > tol_sym:
        raise ValueError("covariance matrix is not symmetric")
    return cov


def symplectic_eigenvalues(cov: np.ndarray) -> np.ndarray:
    """Symplectic eigenvalues of a covariance matrix, sorted descending.

    These are the moduli of the eigenvalues of ``i * Omega @ cov``, one per
    mode.  Requires ``cov`` symmetric positive definite.
    """
    cov = _check_cov(cov)
    n = cov.shape[0] // 2
    if np.any(np.linalg.eigvalsh(cov) <= 0):
        raise PhysicsError("covariance matrix is not positive definite")
    eig = np.linalg.eigvals(1j * omega(n) @ cov)
    moduli = np.sort(np.abs(eig))[::-1]
    # eigenvalues come in +/- pairs of equal modulus; keep one per pair
    return moduli[::2].copy()


def is_physical(cov: np.ndarray, tol: float = TOL_PHYS) -> bool:
    """True iff every symplectic eigenvalue is >= 1/2 - tol."""
    try:
        d = symplectic_eigenvalues(cov)
    except PhysicsError:
        return False
    return bool(d[-1] >= 0.5 - tol)


@dataclass(frozen=True, eq=False)
class GaussianState:
    """An n-mode Gaussian state: covariance matrix plus first-moments vector.

    ``cov`` is the 2n x 2n symmetrized covariance of the quadrature vector
    ``(q1, p1, ..., qn, pn)`` and ``mean`` its expectation value.  Instances
    are immutable; the stored arrays are defensive copies marked read-only.
    """

    cov: np.ndarray
    mean: np.ndarray = field(default=None)  # type: ignore[assignment]
    tol_sym: float = TOL_SYM
    tol_phys: float = TOL_PHYS

    def __post_init__(self) -> None:
        cov = _check_cov(self.cov, self.tol_sym)
        cov = 0.5 * (cov + cov.T)
        mean = self.mean
        if mean is None:
            mean = np.zeros(cov.shape[0])
        mean = np.asarray(mean, dtype=float).reshape(-1)
        if mean.shape[0] != cov.shape[0]:
            raise ValueError(
                f"mean has length {mean.shape[0]}, expected {cov.shape[0]}"
            )
        d = symplectic_eigenvalues(cov)
        if d[-1] < 0.5 - self.tol_phys:
            raise PhysicsError(
                f"unphysical covariance matrix: min symplectic eigenvalue "
                f"{d[-1]:.6g} < 1/2"
            )
        cov = cov.copy()
        mean = mean.copy()
        cov.setflags(write=False)
        mean.setflags(write=False)
        object.__setattr__(self, "cov", cov)
        object.__setattr__(self, "mean", mean)

    @property
    def n_modes(self) -> int:
        return self.cov.shape[0] // 2

    def symplectic_eigenvalues(self) -> np.ndarray:
        return symplectic_eigenvalues(self.cov)

    def reduced(self, modes: "list[int] | tuple[int, ...]") -> "GaussianState":
        """Marginal state of the given modes, in the given order."""
        modes = list(modes)
        if len(set(modes)) != len(modes):
            raise ValueError("duplicate mode indices")
        if any(m < 0 or m >= self.n_modes for m in modes):
            raise ValueError("mode index out of range")
        idx = np.concatenate([[2 * m, 2 * m + 1] for m in modes]).astype(int)
        return GaussianState(self.cov[np.ix_(idx, idx)], self.mean[idx])


def williamson(cov: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Williamson decomposition ``cov = S @ diag(d kron I2) @ S.T``.

    Returns ``(S, d)`` with ``S`` symplectic and ``d`` the symplectic
    eigenvalues sorted descending.  The construction diagonalizes the
    antisymmetric matrix ``cov^{-1/2} @ Omega @ cov^{-1/2}`` by a real Schur
    decomposition.
    """
    cov = _check_cov(cov)
    n = cov.shape[0] // 2
    evals, evecs = np.linalg.eigh(cov)
    if np.any(evals <= 0):
        raise PhysicsError("covariance matrix is not positive definite")
    root = evecs @ np.diag(np.sqrt(evals)) @ evecs.T
    inv_root = evecs @ np.diag(1.0 / np.sqrt(evals)) @ evecs.T

    a = inv_root @ omega(n) @ inv_root
    a = 0.5 * (a - a.T)
    t, q = schur(a, output="real")

    # Each diagonal 2x2 block of t is [[0, kappa], [-kappa, 0]] up to sign;
    # flip blocks so kappa > 0, then sort so d = 1/kappa is descending.
    kappas = np.empty(n)
    for k in range(n):
        if t[2 * k, 2 * k + 1] < 0:
            q[:, [2 * k, 2 * k + 1]] = q[:, [2 * k + 1, 2 * k]]
        kappas[k] = abs(t[2 * k, 2 * k + 1])
    order = np.argsort(kappas)  # ascending kappa == descending d
    perm = np.concatenate([[2 * k, 2 * k + 1] for k in order]).astype(int)
    q = q[:, perm]
    d = 1.0 / kappas[order]

    scale = np.repeat(np.sqrt(1.0 / d), 2)
    s = root @ q @ np.diag(scale)
    return s, d


def _pair_columns_symplectically(basis: np.ndarray, form: np.ndarray) -> np.ndarray:
    """Rearrange an orthonormal basis of an Omega-invariant subspace into
    (v, Omega^T v) pairs.  Used for the unit-eigenvalue block of the Euler
    decomposition."""
    cols = []
    remaining = basis
    while remaining.shape[1] > 0:
        v = remaining[:, 0]
        w = form.T @ v
        # project w back onto the subspace and orthogonalize against v
        coeffs = remaining.T @ w
        w = remaining @ coeffs
        w -= (v @ w) * v
        w /= np.linalg.norm(w)
        cols.extend([v, w])
        # orthogonal complement of {v, w} inside the subspace
        proj = remaining - np.outer(v, v @ remaining) - np.outer(w, w @ remaining)
        qmat, rmat = np.linalg.qr(proj)
        keep = np.abs(np.diag(rmat)) > 1e-10
        remaining = qmat[:, keep]
    return np.column_stack(cols) if cols else np.zeros((basis.shape[0], 0))


def euler_decomposition(
    f: np.ndarray, tol: float = TOL_SYMP
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Euler (Bloch-Messiah) decomposition of a symplectic matrix.

    Returns ``(o, z, o2)`` with ``f = o @ z @ o2``, where ``o`` and ``o2``
    are orthogonal symplectic and ``z = diag(e^{r1}, e^{-r1}, ...)`` collects
    the single-mode squeezers.  Works by polar-decomposing ``f`` and
    diagonalizing the positive factor with an orthogonal symplectic basis
    built from (v, Omega^T v) eigenvector pairs.
    """
    f = np.asarray(f, dtype=float)
    n = _check_even_square(f, "symplectic matrix")
    if not is_symplectic(f, tol):
        raise ValueError("input matrix is not symplectic")
    w = omega(n)

    gram = f @ f.T
    evals, evecs = np.linalg.eigh(gram)  # eigenvalues come in (lam, 1/lam) pairs
    p_evals = np.sqrt(evals)

    lam_cols: list[np.ndarray] = []
    lams: list[float] = []
    unit_cols: list[np.ndarray] = []
    for lam, v in zip(p_evals, evecs.T):
        if lam > 1.0 + 1e-9:
            lam_cols.append(v)
            lams.append(lam)
        elif lam > 1.0 - 1e-9:
            unit_cols.append(v)

    cols: list[np.ndarray] = []
    zdiag: list[float] = []
    for lam, v in sorted(zip(lams, lam_cols), key=lambda t: -t[0]):
        u = w.T @ v
        cols.extend([v, u / np.linalg.norm(u)])
        zdiag.extend([lam, 1.0 / lam])
    if unit_cols:
        paired = _pair_columns_symplectically(np.column_stack(unit_cols), w)
        for j in range(paired.shape[1]):
            cols.append(paired[:, j])
            zdiag.append(1.0)
    o1 = np.column_stack(cols)

    z = np.diag(zdiag)
    # P = o1 z o1^T is the positive polar factor; the orthogonal factor is P^{-1} f
    p_inv = o1 @ np.diag(1.0 / np.array(zdiag)) @ o1.T
    o2 = o1.T @ (p_inv @ f)
    return o1, z, o2
