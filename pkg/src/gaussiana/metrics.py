"""Purity, entropies, two-mode invariants, separability and correlation measures.

Two-mode covariance matrices are analyzed through their four local symplectic
invariants I1 = det A, I2 = det B, I3 = det C, I4 = det(cov), where A, B are
the single-mode blocks and C the correlation block.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import core
from .core import GaussianState
from .exceptions import PhysicsError

# Forgiveness window of f_entropy below its x = 1/2 limit.  The closed-form
# two-mode symplectic eigenvalues lose half the mantissa near pure states
# (sqrt of a cancelled discriminant), so legitimate inputs undershoot 1/2 by
# up to ~1e-8; the window must sit above that scale.
F_CLAMP = 1e-7


@dataclass(frozen=True)
class LocalInvariants:
    i1: float
    i2: float
    i3: float
    i4: float

    @property
    def delta(self) -> float:
        return self.i1 + self.i2 + 2.0 * self.i3

    @property
    def delta_ppt(self) -> float:
        return self.i1 + self.i2 - 2.0 * self.i3


@dataclass(frozen=True)
class StandardForm:
    """Standard-form parameters (a, b, c1, c2) with c1 >= |c2|, c1 >= 0."""

    a: float
    b: float
    c1: float
    c2: float

    def cov(self) -> np.ndarray:
        out = np.diag([self.a, self.a, self.b, self.b])
        out[0, 2] = out[2, 0] = self.c1
        out[1, 3] = out[3, 1] = self.c2
        return out


def purity(state: GaussianState) -> float:
    """mu = 1 / (2^n sqrt(det cov))."""
    det = np.linalg.det(state.cov)
    if det <= 0:
        raise PhysicsError("covariance matrix is not positive definite")
    return float(1.0 / (2.0 ** state.n_modes * np.sqrt(det)))


def f_entropy(x: float, tol: float = F_CLAMP) -> float:
    """Entropy kernel (x + 1/2) ln(x + 1/2) - (x - 1/2) ln(x - 1/2).

    Continuously extended to 0 at x = 1/2; values in [1/2 - tol, 1/2] clamp
    to the limit, anything below raises.
    """
    if x < 0.5 - tol:
        raise ValueError(f"f_entropy requires x >= 1/2, got {x}")
    if x <= 0.5:
        return 0.0
    return float((x + 0.5) * np.log(x + 0.5) - (x - 0.5) * np.log(x - 0.5))


def von_neumann_entropy(state: GaussianState) -> float:
    """Sum of f over the symplectic eigenvalues (natural log, nats)."""
    return float(sum(f_entropy(d) for d in state.symplectic_eigenvalues()))


def _require_two_modes(cov: np.ndarray) -> np.ndarray:
    cov = np.asarray(cov, dtype=float)
    if cov.shape != (4, 4):
        raise ValueError(f"expected a two-mode 4x4 covariance matrix, got {cov.shape}")
    return cov


def local_invariants(cov: np.ndarray) -> LocalInvariants:
    cov = _require_two_modes(cov)
    return LocalInvariants(
        i1=float(np.linalg.det(cov[:2, :2])),
        i2=float(np.linalg.det(cov[2:, 2:])),
        i3=float(np.linalg.det(cov[:2, 2:])),
        i4=float(np.linalg.det(cov)),
    )


def _eig_pair(delta: float, i4: float) -> tuple[float, float]:
    inner = max(delta * delta - 4.0 * i4, 0.0)
    root = np.sqrt(inner)
    d_plus = np.sqrt(max((delta + root) / 2.0, 0.0))
    # quotient form of (delta - root)/2 avoids cancellation when i4 is small
    d_minus = np.sqrt(max(2.0 * i4 / (delta + root), 0.0)) if delta + root > 0 else 0.0
    return float(d_plus), float(d_minus)


def symplectic_eigenvalues_2m(inv: LocalInvariants) -> tuple[float, float]:
    """(d+, d-) from the closed form on the invariants."""
    return _eig_pair(inv.delta, inv.i4)


def ppt_symplectic_eigenvalues(cov: np.ndarray) -> tuple[float, float]:
    """Symplectic eigenvalues of the partially transposed covariance matrix.

    The discriminant is evaluated in exact rational arithmetic: it cancels to
    the square of a tiny entanglement margin near the separability border,
    where double-precision round-off would swamp the sign of d- - 1/2.
    """
    _require_two_modes(cov)
    i1, i2, i3, i4 = _exact_invariants(cov)
    delta = i1 + i2 - 2 * i3
    disc = max(delta * delta - 4 * i4, Fraction(0))
    root = np.sqrt(float(disc))
    d_plus = np.sqrt((float(delta) + root) / 2.0)
    d_minus = np.sqrt(float(2 * i4) / (float(delta) + root))
    return float(d_plus), float(d_minus)


def is_separable_ppt(cov: np.ndarray, tol: float = 1e-12) -> bool:
    """PPT criterion; necessary and sufficient for two-mode Gaussian states."""
    _, d_minus = ppt_symplectic_eigenvalues(cov)
    return d_minus >= 0.5 - tol


def standard_form(cov: np.ndarray) -> StandardForm:
    """Standard-form parameters recovered from the local invariants.

    The invariants fix a = sqrt(I1), b = sqrt(I2) and the pair {c1^2, c2^2}
    as roots of t^2 - s t + I3^2 = 0 with s fixed by I4; signs follow the
    convention c1 >= |c2|, c1 >= 0, sign(c2) = sign(I3).  The quadratic is
    split in exact rational arithmetic: its discriminant vanishes whenever
    |c1| = |c2|, where a floating-point split would leak sqrt(eps) noise.
    """
    cov = _require_two_modes(cov)
    if not core.is_physical(cov, tol=1e-9):
        raise PhysicsError("standard form requires a physical covariance matrix")
    i1, i2, i3, i4 = _exact_invariants(cov)
    a = float(np.sqrt(float(i1)))
    b = float(np.sqrt(float(i2)))
    top = i1 * i2 + i3 * i3 - i4  # s * ab, exactly
    disc = max(top * top - 4 * i3 * i3 * i1 * i2, Fraction(0))  # (disc of t) * (ab)^2
    hi = (float(top) + np.sqrt(float(disc))) / (2.0 * np.sqrt(float(i1 * i2)))
    c1 = float(np.sqrt(max(hi, 0.0)))
    c2 = float(i3) / c1 if c1 > 0 else 0.0  # lo root via c1 c2 = I3
    return StandardForm(a=a, b=b, c1=c1, c2=c2)


def mutual_information(state: GaussianState) -> float:
    """I_M = f(sqrt I1) + f(sqrt I2) - f(d+) - f(d-)."""
    inv = local_invariants(state.cov)
    # the general eigenvalue path keeps full accuracy near pure states, where
    # the closed form loses half the mantissa under f's unbounded slope
    d_plus, d_minus = core.symplectic_eigenvalues(state.cov)
    return (
        f_entropy(np.sqrt(inv.i1))
        + f_entropy(np.sqrt(inv.i2))
        - f_entropy(d_plus)
        - f_entropy(d_minus)
    )


def conditional_entropy(state: GaussianState, which: str = "A|B") -> float:
    """S(AB) - S(B) for "A|B" (or minus S(A) for "B|A"); may be negative."""
    inv = local_invariants(state.cov)
    d_plus, d_minus = core.symplectic_eigenvalues(state.cov)
    joint = f_entropy(d_plus) + f_entropy(d_minus)
    if which == "A|B":
        return joint - f_entropy(np.sqrt(inv.i2))
    if which == "B|A":
        return joint - f_entropy(np.sqrt(inv.i1))
    raise ValueError("which must be 'A|B' or 'B|A'")


def duan_criterion(
    sf: StandardForm, r1: float = 0.0, r2: float = 0.0
) -> tuple[float, bool]:
    """EPR-variance test on the standard form; lhs < 0 flags entanglement.

    Evaluates a~ g + b~/g - |c1~| - |c2~| - (g + 1/g) with
    g = sqrt((b~ - 1/2)/(a~ - 1/2)), a~ = 2a cosh 2r1, b~ = 2b cosh 2r2,
    c1~ = 2 c1 e^{r1 + r2}, c2~ = 2 c2 e^{-(r1 + r2)}.  A separable state
    never takes the lhs negative; r1, r2 = 0 is the unoptimized variant.
    """
    a_t = 2.0 * sf.a * np.cosh(2.0 * r1)
    b_t = 2.0 * sf.b * np.cosh(2.0 * r2)
    c1_t = 2.0 * sf.c1 * np.exp(r1 + r2)
    c2_t = 2.0 * sf.c2 * np.exp(-(r1 + r2))
    if a_t - 0.5 <= 0.0 or b_t - 0.5 <= 0.0:
        warnings.warn(
            "degenerate standard form (a~ or b~ at the vacuum floor); "
            "EPR-variance test skipped",
            stacklevel=2,
        )
        return float("inf"), False
    g = np.sqrt((b_t - 0.5) / (a_t - 0.5))
    lhs = a_t * g + b_t / g - abs(c1_t) - abs(c2_t) - (g + 1.0 / g)
    return float(lhs), bool(lhs < 0.0)


def log_negativity(cov: np.ndarray, nats: bool = False) -> float:
    """max{0, -log(2 d~-)}; base-2 (bits) by default, natural log if nats."""
    _, d_minus = ppt_symplectic_eigenvalues(cov)
    value = -np.log(2.0 * d_minus)
    if not nats:
        value /= np.log(2.0)
    return float(max(0.0, value))


def eof_symmetric(cov: np.ndarray, tol: float = 1e-8) -> float:
    """Entanglement of formation for symmetric (a = b) two-mode states."""
    inv = local_invariants(cov)
    a, b = np.sqrt(inv.i1), np.sqrt(inv.i2)
    if abs(a - b) > tol * max(1.0, a):
        raise ValueError(
            "eof_symmetric requires a symmetric state (det A == det B); "
            "general states need the full variational prescription"
        )
    _, d_minus = ppt_symplectic_eigenvalues(cov)
    if d_minus >= 0.5 - F_CLAMP:
        return 0.0
    x_m = (d_minus * d_minus + 0.25) / (2.0 * d_minus)
    return f_entropy(x_m)


def eof_squeezed_thermal(cov: np.ndarray, tol: float = 1e-8) -> float:
    """Entanglement of formation for standard forms with c1 = -c2 = c >= 0."""
    cov = _require_two_modes(cov)
    sf = standard_form(cov)
    if abs(sf.c1 + sf.c2) > tol * max(1.0, sf.c1):
        raise ValueError(
            "eof_squeezed_thermal requires c1 = -c2 in standard form; "
            "general states need the full variational prescription"
        )
    _, d_minus = ppt_symplectic_eigenvalues(cov)
    if d_minus >= 0.5 - F_CLAMP:
        return 0.0
    a, b, c = sf.a, sf.b, sf.c1
    # det(cov + i Omega / 2) = I4 - Delta/4 + 1/16 = (d+^2 - 1/4)(d-^2 - 1/4);
    # exact rational evaluation keeps the near-pure cancellation benign
    i1, i2, i3, i4 = _exact_invariants(cov)
    det_heis = i4 - (i1 + i2 + 2 * i3) / 4 + Fraction(1, 16)
    det_heis = float(max(det_heis, Fraction(0)))
    x_m = ((a + b) * (a * b - c * c + 0.25) - 2.0 * c * np.sqrt(det_heis)) / (
        (a + b) ** 2 - 4.0 * c * c
    )
    return f_entropy(x_m)


def _det_frac(rows: "list[list[Fraction]]") -> Fraction:
    """Exact determinant by cofactor expansion (matrices up to 4x4)."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = Fraction(0)
    for j, pivot in enumerate(rows[0]):
        if pivot == 0:
            continue
        minor = [[row[k] for k in range(n) if k != j] for row in rows[1:]]
        term = pivot * _det_frac(minor)
        total += term if j % 2 == 0 else -term
    return total


def _exact_invariants(cov: np.ndarray) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """I1..I4 in exact rational arithmetic on the (exactly binary) entries.

    f's slope diverges at its x = 1/2 limit, so the invariant combinations
    feeding it must not lose half the mantissa to cancellation near pure
    states; determinants of a 4x4 are cheap enough to do exactly.
    """
    rows = [[Fraction(float(cov[i, j])) for j in range(4)] for i in range(4)]
    i1 = _det_frac([row[:2] for row in rows[:2]])
    i2 = _det_frac([row[2:] for row in rows[2:]])
    i3 = _det_frac([row[2:] for row in rows[:2]])
    i4 = _det_frac(rows)
    return i1, i2, i3, i4


def _emin_measured_second(i1: Fraction, i2: Fraction, i3: Fraction, i4: Fraction) -> float:
    """Minimal conditional determinant over Gaussian measurements on the
    second subsystem (two-branch closed form on the invariants)."""
    quarter = Fraction(1, 4)
    i3sq = i3 * i3
    lhs = (i1 * i2 - i4) ** 2
    rhs = (i1 + 4 * i4) * (i2 + quarter) * i3sq
    denom = 2 * (i2 - quarter)
    if i3sq > 0 and lhs <= rhs and denom > 0:
        inner = max(i3sq - (i1 - 4 * i4) * (i2 - quarter), Fraction(0))
        return float(((abs(float(i3)) + np.sqrt(float(inner))) / float(denom)) ** 2)
    top = i1 * i2 + i4 - i3sq
    disc = max(top * top - 4 * i1 * i2 * i4, Fraction(0))
    # quotient form of (top - sqrt(disc)) / (2 i2); stable near product states
    return float(2 * i1 * i4) / (float(top) + np.sqrt(float(disc)))


def gaussian_discord(state: GaussianState, which: str = "A|B") -> float:
    """Gaussian quantum discord f(sqrt E_min) - S_cond for a two-mode state."""
    i1, i2, i3, i4 = _exact_invariants(state.cov)
    if which == "A|B":
        e_min = _emin_measured_second(i1, i2, i3, i4)
    elif which == "B|A":
        e_min = _emin_measured_second(i2, i1, i3, i4)
    else:
        raise ValueError("which must be 'A|B' or 'B|A'")
    return f_entropy(np.sqrt(e_min)) - conditional_entropy(state, which)
