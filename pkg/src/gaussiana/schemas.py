"""Request/response models shared by the HTTP service and the CLI.

Circuits are JSON documents: an initial state spec, an ordered list of op
records (each a single-key object naming the op) and an outputs block with
requested metric names and/or a Wigner grid.  Physics-domain checks (negative
photon numbers, over-squeezed baths) are deliberately not encoded here; they
belong to the engine so that schema errors and physics errors keep distinct
exit codes.
"""

from __future__ import annotations

from typing import Annotated, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


# --- state specs ----------------------------------------------------------


class VacuumSpec(_Strict):
    name: Literal["vacuum"]
    n: int = 1


class ThermalSpec(_Strict):
    name: Literal["thermal"]
    N: list[float]


class CoherentSpec(_Strict):
    name: Literal["coherent"]
    alpha: list[tuple[float, float]]


class DstsSpec(_Strict):
    """Displaced squeezed thermal single-mode state."""

    name: Literal["dsts"]
    alpha: tuple[float, float] = (0.0, 0.0)
    r: float = 0.0
    psi: float = 0.0
    N: float = 0.0


class TmstSpec(_Strict):
    """Two-mode squeezed thermal state."""

    name: Literal["tmst"]
    r: float
    N1: float = 0.0
    N2: float = 0.0


class TwbSpec(_Strict):
    name: Literal["twb"]
    r: float


StateSpec = Annotated[
    Union[VacuumSpec, ThermalSpec, CoherentSpec, DstsSpec, TmstSpec, TwbSpec],
    Field(discriminator="name"),
]


# --- circuit ops ----------------------------------------------------------


class DisplaceOp(_Strict):
    mode: int
    dq: float = 0.0
    dp: float = 0.0


class RotateOp(_Strict):
    mode: int
    theta: float


class BsOp(_Strict):
    modes: tuple[int, int]
    phi: float
    theta: float = 0.0


class Squeeze1Op(_Strict):
    mode: int
    r: float
    psi: float = 0.0


class Squeeze2Op(_Strict):
    modes: tuple[int, int]
    r: float
    psi: float = 0.0


class ChannelOp(_Strict):
    mode: int
    gamma: float
    N: float = 0.0
    M_re: float = 0.0
    M_im: float = 0.0
    t: float


class MeasureOp(_Strict):
    mode: int
    kind: Literal["heterodyne", "homodyne"]
    outcome: Union[tuple[float, float], float] = 0.0
    angle: float = 0.0
    s: float = 1e-6


OP_NAMES = ("displace", "rotate", "bs", "squeeze1", "squeeze2", "channel", "measure")


class OpRecord(_Strict):
    """Single-key record naming one circuit operation."""

    displace: Optional[DisplaceOp] = None
    rotate: Optional[RotateOp] = None
    bs: Optional[BsOp] = None
    squeeze1: Optional[Squeeze1Op] = None
    squeeze2: Optional[Squeeze2Op] = None
    channel: Optional[ChannelOp] = None
    measure: Optional[MeasureOp] = None

    @model_validator(mode="after")
    def _exactly_one(self) -> "OpRecord":
        present = [n for n in OP_NAMES if getattr(self, n) is not None]
        if len(present) != 1:
            raise ValueError(
                f"an op record must name exactly one operation, got {present or 'none'}"
            )
        return self

    def item(self) -> tuple[str, BaseModel]:
        for n in OP_NAMES:
            value = getattr(self, n)
            if value is not None:
                return n, value
        raise AssertionError("unreachable: validated op record is empty")


# --- outputs --------------------------------------------------------------


class WignerGridSpec(_Strict):
    """Grid over one mode's q-p plane, or over two explicit quadrature axes."""

    mode: Optional[int] = None
    axes: Optional[tuple[int, int]] = None
    xrange: tuple[float, float] = (-5.0, 5.0)
    yrange: tuple[float, float] = (-5.0, 5.0)
    resolution: int = 64

    @model_validator(mode="after")
    def _one_target(self) -> "WignerGridSpec":
        if (self.mode is None) == (self.axes is None):
            raise ValueError("specify exactly one of 'mode' or 'axes'")
        return self


class OutputsSpec(_Strict):
    metrics: list[str] = Field(default_factory=list)
    wigner: Optional[WignerGridSpec] = None


class CircuitSpec(_Strict):
    initial: StateSpec
    ops: list[OpRecord] = Field(default_factory=list)
    outputs: OutputsSpec = Field(default_factory=OutputsSpec)


# --- requests -------------------------------------------------------------


class RunRequest(_Strict):
    circuit: CircuitSpec
    tol: float = 1e-9
    cutoff_check: Optional[int] = None


class MetricsRequest(_Strict):
    state: StateSpec
    metrics: Optional[list[str]] = None  # None means every applicable key


class FidelityRequest(_Strict):
    a: StateSpec
    b: StateSpec


class WignerRequest(_Strict):
    state: StateSpec
    grid: WignerGridSpec


# --- responses ------------------------------------------------------------

MetricValue = Union[bool, float, list[float], None]


class MeasurementResult(_Strict):
    op_index: int
    density: float


class OracleCheck(_Strict):
    performed: bool
    cutoff: Optional[int] = None
    max_cov_error: Optional[float] = None
    max_mean_error: Optional[float] = None
    max_density_error: Optional[float] = None
    trace_deficit: Optional[float] = None
    reason: Optional[str] = None


class RunResponse(_Strict):
    n_modes: int
    cov: list[float]  # row-major, length (2 n_modes)^2
    mean: list[float]
    metrics: dict[str, MetricValue] = Field(default_factory=dict)
    measurements: list[MeasurementResult] = Field(default_factory=list)
    wigner_csv: Optional[str] = None
    oracle_check: Optional[OracleCheck] = None


class ValidateResponse(_Strict):
    valid: bool
    n_modes_initial: int
    n_modes_final: int


class FidelityResponse(_Strict):
    overlap: float
    fidelity: Optional[float] = None
    n_modes: int


class ErrorDetail(_Strict):
    kind: Literal["schema", "physics"]
    message: str
    op_index: Optional[int] = None
