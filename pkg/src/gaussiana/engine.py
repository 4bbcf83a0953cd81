"""Executes validated circuit requests against the library.

This is the single service layer behind both the HTTP endpoints and the CLI:
it turns wire-format models from :mod:`gaussiana.schemas` into library calls
and numeric results back into response models.  Structural problems raise
:class:`SchemaError`, value-domain violations raise :class:`PhysicsError`;
the two are kept apart because they map to different exit codes and HTTP
statuses.
"""

from __future__ import annotations

import logging

import numpy as np

from . import (
    channels,
    conditioning,
    core,
    fidelity as fidelity_mod,
    metrics as metrics_mod,
    phasespace,
    states,
    transforms,
)
from .core import GaussianState
from .exceptions import PhysicsError, SchemaError
from .schemas import (
    ChannelOp,
    CircuitSpec,
    FidelityRequest,
    FidelityResponse,
    MeasureOp,
    MeasurementResult,
    MetricsRequest,
    OracleCheck,
    RunResponse,
    StateSpec,
    ValidateResponse,
    WignerGridSpec,
)

logger = logging.getLogger("gaussiana")

METRICS_ANY_N = (
    "purity",
    "von_neumann_entropy",
    "symplectic_eigenvalues",
    "nonclassical_depth",
)

METRICS_TWO_MODE = (
    "i1",
    "i2",
    "i3",
    "i4",
    "delta",
    "delta_ppt",
    "a",
    "b",
    "c1",
    "c2",
    "d_plus",
    "d_minus",
    "d_plus_ppt",
    "d_minus_ppt",
    "mutual_information",
    "conditional_entropy_a_given_b",
    "conditional_entropy_b_given_a",
    "ppt_separable",
    "duan_lhs",
    "duan_entangled",
    "log_negativity",
    "log_negativity_nats",
    "eof",
    "gaussian_discord_a_given_b",
    "gaussian_discord_b_given_a",
)

METRIC_KEYS = METRICS_ANY_N + METRICS_TWO_MODE


def initial_mode_count(spec: StateSpec) -> int:
    name = spec.name
    if name == "vacuum":
        if spec.n < 1:
            raise SchemaError("vacuum state requires n >= 1")
        return spec.n
    if name == "thermal":
        if not spec.N:
            raise SchemaError("thermal state requires at least one mode")
        return len(spec.N)
    if name == "coherent":
        if not spec.alpha:
            raise SchemaError("coherent state requires at least one mode")
        return len(spec.alpha)
    if name == "dsts":
        return 1
    return 2  # tmst, twb


def build_initial(spec: StateSpec) -> GaussianState:
    name = spec.name
    if name == "vacuum":
        return states.vacuum(spec.n)
    if name == "thermal":
        return states.thermal(spec.N)
    if name == "coherent":
        return states.coherent([complex(re, im) for re, im in spec.alpha])
    if name == "dsts":
        return states.single_mode_general(
            alpha=complex(*spec.alpha), r=spec.r, psi=spec.psi, photons=spec.N
        )
    if name == "tmst":
        return states.two_mode_squeezed_thermal(spec.r, spec.N1, spec.N2)
    if name == "twb":
        return states.twb(spec.r)
    raise SchemaError(f"unknown state name {name!r}")


def _check_mode(mode: int, n_modes: int, index: int) -> None:
    if mode < 0 or mode >= n_modes:
        raise SchemaError(
            f"op {index}: mode {mode} out of range for {n_modes} mode(s)"
        )


def _check_pair(modes: tuple[int, int], n_modes: int, index: int) -> None:
    if modes[0] == modes[1]:
        raise SchemaError(f"op {index}: the two modes must be distinct")
    for m in modes:
        _check_mode(m, n_modes, index)


def _validate_channel(op: ChannelOp, index: int) -> None:
    try:
        channels.ChannelParams(op.gamma, op.N, complex(op.M_re, op.M_im))
    except PhysicsError as exc:
        raise PhysicsError(f"op {index}: {exc}") from exc
    if op.t < 0:
        raise PhysicsError(f"op {index}: evolution time must be non-negative")


def _validate_measure(op: MeasureOp, n_modes: int, index: int) -> None:
    if n_modes < 2:
        raise SchemaError(f"op {index}: measuring requires at least two modes")
    _check_mode(op.mode, n_modes, index)
    if op.kind == "heterodyne" and not isinstance(op.outcome, tuple):
        raise SchemaError(
            f"op {index}: heterodyne outcome must be a [x, y] pair"
        )
    if op.kind == "homodyne":
        if isinstance(op.outcome, tuple):
            raise SchemaError(f"op {index}: homodyne outcome must be a scalar")
        if op.s <= 0:
            raise SchemaError(f"op {index}: squeeze parameter s must be positive")


def _validate_grid(grid: WignerGridSpec, n_modes: int) -> None:
    if grid.mode is not None and not 0 <= grid.mode < n_modes:
        raise SchemaError(f"wigner grid: mode {grid.mode} out of range")
    if grid.axes is not None:
        lo, hi = grid.axes
        if lo == hi or not (0 <= lo < 2 * n_modes and 0 <= hi < 2 * n_modes):
            raise SchemaError("wigner grid: axes must be two distinct in-range indices")
    if grid.resolution < 2:
        raise SchemaError("wigner grid: resolution must be at least 2")
    if grid.xrange[0] >= grid.xrange[1] or grid.yrange[0] >= grid.yrange[1]:
        raise SchemaError("wigner grid: ranges must be increasing intervals")


def _validate_metric_names(names: "list[str]", n_modes: int) -> None:
    for name in names:
        if name not in METRIC_KEYS:
            raise SchemaError(f"unknown metric {name!r}")
        if name in METRICS_TWO_MODE and n_modes != 2:
            raise SchemaError(
                f"metric {name!r} requires a two-mode state, final state has "
                f"{n_modes} mode(s)"
            )


def validate_circuit(circuit: CircuitSpec) -> ValidateResponse:
    """Static schema and physics validation; no execution."""
    n = initial_mode_count(circuit.initial)
    build_initial(circuit.initial)  # surfaces physics errors in the parameters
    n_initial = n
    for index, record in enumerate(circuit.ops):
        name, op = record.item()
        if name in ("displace", "rotate", "squeeze1"):
            _check_mode(op.mode, n, index)
        elif name in ("bs", "squeeze2"):
            _check_pair(op.modes, n, index)
        elif name == "channel":
            _check_mode(op.mode, n, index)
            _validate_channel(op, index)
        elif name == "measure":
            _validate_measure(op, n, index)
            n -= 1
    _validate_metric_names(circuit.outputs.metrics, n)
    if circuit.outputs.wigner is not None:
        _validate_grid(circuit.outputs.wigner, n)
    return ValidateResponse(valid=True, n_modes_initial=n_initial, n_modes_final=n)


def _apply_op(
    state: GaussianState, name: str, op, index: int
) -> tuple[GaussianState, "float | None"]:
    if name == "displace":
        f, d = transforms.displacement([op.dq, op.dp])
        return transforms.apply(state, f, d, modes=[op.mode]), None
    if name == "rotate":
        return (
            transforms.apply(state, transforms.phase_rotation(op.theta), modes=[op.mode]),
            None,
        )
    if name == "bs":
        f = transforms.beam_splitter(op.phi, op.theta)
        return transforms.apply(state, f, modes=list(op.modes)), None
    if name == "squeeze1":
        f = transforms.squeezer_single(op.r, op.psi)
        return transforms.apply(state, f, modes=[op.mode]), None
    if name == "squeeze2":
        f = transforms.squeezer_two_mode(op.r, op.psi)
        return transforms.apply(state, f, modes=list(op.modes)), None
    if name == "channel":
        params = [channels.ChannelParams(0.0) for _ in range(state.n_modes)]
        params[op.mode] = channels.ChannelParams(op.gamma, op.N, complex(op.M_re, op.M_im))
        return channels.evolve_multi(state, params, op.t), None
    if name == "measure":
        if op.kind == "heterodyne":
            x, y = op.outcome
            povm = conditioning.heterodyne_povm(complex(x, y) / np.sqrt(2.0))
        else:
            povm = conditioning.homodyne_povm(op.angle, float(op.outcome), op.s)
        new_state, density = conditioning.condition(state, op.mode, povm)
        return new_state, density
    raise SchemaError(f"op {index}: unknown operation {name!r}")


def compute_metrics(state: GaussianState, names: "list[str] | None" = None) -> dict:
    """Evaluate metrics by canonical key; None selects every applicable key."""
    if names is None:
        names = list(METRICS_ANY_N)
        if state.n_modes == 2:
            names += list(METRICS_TWO_MODE)
    else:
        _validate_metric_names(names, state.n_modes)

    cache: dict = {}

    def two_mode_context() -> dict:
        if not cache:
            inv = metrics_mod.local_invariants(state.cov)
            sf = metrics_mod.standard_form(state.cov)
            cache["inv"] = inv
            cache["sf"] = sf
            cache["d"] = metrics_mod.symplectic_eigenvalues_2m(inv)
            cache["d_ppt"] = metrics_mod.ppt_symplectic_eigenvalues(state.cov)
            cache["duan"] = metrics_mod.duan_criterion(sf)
        return cache

    def eof_value() -> "float | None":
        sf = two_mode_context()["sf"]
        scale = max(1.0, sf.c1)
        if abs(sf.c1 + sf.c2) <= 1e-8 * scale:
            return metrics_mod.eof_squeezed_thermal(state.cov)
        if abs(sf.a - sf.b) <= 1e-8 * max(1.0, sf.a):
            return metrics_mod.eof_symmetric(state.cov)
        return None

    getters = {
        "purity": lambda: metrics_mod.purity(state),
        "von_neumann_entropy": lambda: metrics_mod.von_neumann_entropy(state),
        "symplectic_eigenvalues": lambda: [
            float(d) for d in state.symplectic_eigenvalues()
        ],
        "nonclassical_depth": lambda: phasespace.nonclassical_depth(state),
        "i1": lambda: two_mode_context()["inv"].i1,
        "i2": lambda: two_mode_context()["inv"].i2,
        "i3": lambda: two_mode_context()["inv"].i3,
        "i4": lambda: two_mode_context()["inv"].i4,
        "delta": lambda: two_mode_context()["inv"].delta,
        "delta_ppt": lambda: two_mode_context()["inv"].delta_ppt,
        "a": lambda: two_mode_context()["sf"].a,
        "b": lambda: two_mode_context()["sf"].b,
        "c1": lambda: two_mode_context()["sf"].c1,
        "c2": lambda: two_mode_context()["sf"].c2,
        "d_plus": lambda: two_mode_context()["d"][0],
        "d_minus": lambda: two_mode_context()["d"][1],
        "d_plus_ppt": lambda: two_mode_context()["d_ppt"][0],
        "d_minus_ppt": lambda: two_mode_context()["d_ppt"][1],
        "mutual_information": lambda: metrics_mod.mutual_information(state),
        "conditional_entropy_a_given_b": lambda: metrics_mod.conditional_entropy(
            state, "A|B"
        ),
        "conditional_entropy_b_given_a": lambda: metrics_mod.conditional_entropy(
            state, "B|A"
        ),
        "ppt_separable": lambda: metrics_mod.is_separable_ppt(state.cov),
        "duan_lhs": lambda: two_mode_context()["duan"][0],
        "duan_entangled": lambda: two_mode_context()["duan"][1],
        "log_negativity": lambda: metrics_mod.log_negativity(state.cov),
        "log_negativity_nats": lambda: metrics_mod.log_negativity(state.cov, nats=True),
        "eof": eof_value,
        "gaussian_discord_a_given_b": lambda: metrics_mod.gaussian_discord(state, "A|B"),
        "gaussian_discord_b_given_a": lambda: metrics_mod.gaussian_discord(state, "B|A"),
    }

    out: dict = {}
    for name in names:
        value = getters[name]()
        if isinstance(value, (bool, np.bool_)):
            out[name] = bool(value)
        elif isinstance(value, list) or value is None:
            out[name] = value
        else:
            out[name] = float(value)
    return out


def grid_to_csv(rows: np.ndarray) -> str:
    lines = ["x,y,w"]
    for x, y, w in rows:
        lines.append(f"{float(x)!r},{float(y)!r},{float(w)!r}")
    return "\n".join(lines) + "\n"


def wigner_csv(state: GaussianState, grid: WignerGridSpec) -> str:
    _validate_grid(grid, state.n_modes)
    target = grid.mode if grid.mode is not None else tuple(grid.axes)
    rows = phasespace.wigner_grid(
        state, target, (grid.xrange, grid.yrange), grid.resolution
    )
    return grid_to_csv(rows)


def run_circuit(
    circuit: CircuitSpec, tol: float = 1e-9, cutoff_check: "int | None" = None
) -> RunResponse:
    validate_circuit(circuit)
    state = build_initial(circuit.initial)
    logger.debug("initial state: %s with %d mode(s)", circuit.initial.name, state.n_modes)
    measurements: list[MeasurementResult] = []
    for index, record in enumerate(circuit.ops):
        name, op = record.item()
        try:
            state, density = _apply_op(state, name, op, index)
        except (PhysicsError, SchemaError):
            raise
        except ValueError as exc:
            raise SchemaError(f"op {index} ({name}): {exc}") from exc
        logger.debug("op %d (%s) applied; %d mode(s) remain", index, name, state.n_modes)
        if density is not None:
            measurements.append(MeasurementResult(op_index=index, density=density))
    if not core.is_physical(state.cov, tol=tol):
        raise PhysicsError("final state violates the uncertainty relation")

    metric_values = compute_metrics(state, circuit.outputs.metrics)
    csv_text = None
    if circuit.outputs.wigner is not None:
        csv_text = wigner_csv(state, circuit.outputs.wigner)

    oracle = None
    if cutoff_check is not None:
        oracle = _oracle_check(circuit, state, measurements, cutoff_check)

    return RunResponse(
        n_modes=state.n_modes,
        cov=[float(v) for v in np.asarray(state.cov).reshape(-1)],
        mean=[float(v) for v in state.mean],
        metrics=metric_values,
        measurements=measurements,
        wigner_csv=csv_text,
        oracle_check=oracle,
    )


def metrics_for_state(request: MetricsRequest) -> dict:
    state = build_initial(request.state)
    if request.metrics is not None:
        _validate_metric_names(request.metrics, state.n_modes)
    return compute_metrics(state, request.metrics)


def fidelity_pair(request: FidelityRequest) -> FidelityResponse:
    sa = build_initial(request.a)
    sb = build_initial(request.b)
    if sa.n_modes != sb.n_modes:
        raise SchemaError("fidelity requires two states with the same mode count")
    value = None
    if sa.n_modes == 1:
        value = fidelity_mod.fidelity_1m(sa, sb)
    elif sa.n_modes == 2:
        value = fidelity_mod.fidelity_2m(sa, sb)
    return FidelityResponse(
        overlap=fidelity_mod.overlap(sa, sb), fidelity=value, n_modes=sa.n_modes
    )


# --- optional Fock-space cross-validation ----------------------------------

_ORACLE_OPS = ("displace", "rotate", "bs", "squeeze1", "squeeze2", "measure")


def _oracle_check(
    circuit: CircuitSpec,
    final_state: GaussianState,
    measurements: "list[MeasurementResult]",
    cutoff: int,
) -> OracleCheck:
    from . import fock_oracle as fock

    if initial_mode_count(circuit.initial) > 2:
        return OracleCheck(performed=False, reason="oracle limited to 1-2 modes")
    for record in circuit.ops:
        name, op = record.item()
        if name not in _ORACLE_OPS or (name == "measure" and op.kind != "heterodyne"):
            return OracleCheck(
                performed=False,
                reason=f"op {name!r} not reproducible in the Fock oracle",
            )

    spec = circuit.initial
    if spec.name == "vacuum":
        rho = fock.build_state("vacuum", cutoff, n=spec.n)
    elif spec.name == "thermal":
        rho = fock.build_state("thermal", cutoff, photons=spec.N)
    elif spec.name == "coherent":
        rho = fock.build_state(
            "coherent", cutoff, alpha=[complex(re, im) for re, im in spec.alpha]
        )
    elif spec.name == "dsts":
        rho = fock.build_state(
            "dsts", cutoff, alpha=complex(*spec.alpha), r=spec.r, psi=spec.psi,
            photons=spec.N,
        )
    elif spec.name == "tmst":
        rho = fock.build_state(
            "tmst", cutoff, r=spec.r, photons_1=spec.N1, photons_2=spec.N2
        )
    else:
        rho = fock.build_state("twb", cutoff, r=spec.r)

    densities: list[float] = []
    for record in circuit.ops:
        name, op = record.item()
        rho, density = _oracle_apply(rho, name, op, cutoff)
        if density is not None:
            densities.append(density)

    cov, mean = fock.cm_of(rho)
    density_err = None
    if densities:
        density_err = max(
            abs(d - m.density) for d, m in zip(densities, measurements)
        )
    return OracleCheck(
        performed=True,
        cutoff=cutoff,
        max_cov_error=float(np.max(np.abs(cov - final_state.cov))),
        max_mean_error=float(np.max(np.abs(mean - final_state.mean))),
        max_density_error=density_err,
        trace_deficit=rho.trace_deficit,
    )


def _oracle_apply(rho, name: str, op, cutoff: int):
    from scipy.linalg import expm

    from . import fock_oracle as fock

    n = rho.n_modes
    a_ops = [fock._embed(fock.mode_ops(cutoff)[0], k, n, cutoff) for k in range(n)]

    if name == "measure":
        x, y = op.outcome
        alpha = complex(x, y) / np.sqrt(2.0)
        new_rho, density = fock.project_coherent(rho, op.mode, alpha)
        return new_rho, density

    if name == "displace":
        lam = complex(op.dq, op.dp) / np.sqrt(2.0)
        a = a_ops[op.mode]
        u = expm(lam * a.conj().T - np.conj(lam) * a)
    elif name == "rotate":
        a = a_ops[op.mode]
        u = expm(-1j * op.theta * a.conj().T @ a)
    elif name == "bs":
        # conjugate phase: the mixer matrix fixed by the library carries the
        # opposite theta sign from the Heisenberg mode evolution of exp(K)
        zeta = op.phi * np.exp(-1j * op.theta)
        a, b = a_ops[op.modes[0]], a_ops[op.modes[1]]
        u = expm(zeta * a.conj().T @ b - np.conj(zeta) * a @ b.conj().T)
    elif name == "squeeze1":
        xi = op.r * np.exp(1j * op.psi)
        a = a_ops[op.mode]
        u = expm(0.5 * (xi * a.conj().T @ a.conj().T - np.conj(xi) * a @ a))
    else:  # squeeze2
        xi = op.r * np.exp(1j * op.psi)
        a, b = a_ops[op.modes[0]], a_ops[op.modes[1]]
        u = expm(xi * a.conj().T @ b.conj().T - np.conj(xi) * a @ b)
    return type(rho)(cutoff, n, u @ rho.rho @ u.conj().T), None
