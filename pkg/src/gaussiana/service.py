"""FastAPI service exposing the circuit engine.

Error contract: structural problems (bad schema, unknown ops or metrics,
out-of-range indices) return 422 with ``detail.kind == "schema"``; physical
impossibilities (negative photon numbers, over-squeezed baths, unphysical
states) return 400 with ``detail.kind == "physics"``.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse, PlainTextResponse

from . import engine
from .exceptions import PhysicsError, SchemaError
from .schemas import (
    CircuitSpec,
    FidelityRequest,
    FidelityResponse,
    MetricsRequest,
    RunRequest,
    RunResponse,
    ValidateResponse,
    WignerRequest,
)

app = FastAPI(
    title="gaussiana",
    description="Covariance-matrix calculus for multimode Gaussian quantum states",
    version="0.1.0",
)


@app.exception_handler(PhysicsError)
async def _physics_error(_: Request, exc: PhysicsError) -> JSONResponse:
    return JSONResponse(
        status_code=400,
        content={"detail": {"kind": "physics", "message": str(exc)}},
    )


@app.exception_handler(SchemaError)
async def _schema_error(_: Request, exc: SchemaError) -> JSONResponse:
    return JSONResponse(
        status_code=422,
        content={"detail": {"kind": "schema", "message": str(exc)}},
    )


@app.get("/health")
def health() -> dict:
    return {"status": "ok"}


@app.post("/run", response_model=RunResponse, response_model_exclude_none=False)
def run(request: RunRequest) -> RunResponse:
    return engine.run_circuit(
        request.circuit, tol=request.tol, cutoff_check=request.cutoff_check
    )


@app.post("/validate", response_model=ValidateResponse)
def validate(circuit: CircuitSpec) -> ValidateResponse:
    return engine.validate_circuit(circuit)


@app.post("/metrics")
def metrics(request: MetricsRequest) -> dict:
    return engine.metrics_for_state(request)


@app.post("/fidelity", response_model=FidelityResponse)
def fidelity(request: FidelityRequest) -> FidelityResponse:
    return engine.fidelity_pair(request)


@app.post("/wigner")
def wigner(request: WignerRequest) -> PlainTextResponse:
    state = engine.build_initial(request.state)
    return PlainTextResponse(
        engine.wigner_csv(state, request.grid), media_type="text/csv"
    )
