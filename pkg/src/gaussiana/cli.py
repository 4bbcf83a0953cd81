"""Command-line client for the circuit engine.

By default commands execute in-process through the same service layer the
HTTP endpoints use; pass ``--server URL`` to talk to a running instance
instead.  Output is canonical JSON (sorted keys, two-space indent) or CSV,
byte-identical across runs for identical input.

Exit codes: 0 success, 2 schema error (including malformed JSON), 3 physics
error.  Set GAUSSIANA_LOG=debug|info|... for progress logging on stderr.
"""

from __future__ import annotations

import json
import logging
import os
import sys

import click
from pydantic import ValidationError

from . import engine
from .exceptions import PhysicsError, SchemaError
from .schemas import (
    CircuitSpec,
    FidelityRequest,
    MetricsRequest,
    RunRequest,
    WignerRequest,
)

EXIT_SCHEMA = 2
EXIT_PHYSICS = 3


def _configure_logging() -> None:
    level = os.environ.get("GAUSSIANA_LOG", "").upper()
    if level:
        logging.basicConfig(stream=sys.stderr, format="%(name)s: %(message)s")
        logging.getLogger("gaussiana").setLevel(getattr(logging, level, logging.INFO))


def _fail(code: int, message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except OSError as exc:
        _fail(EXIT_SCHEMA, f"cannot read {path}: {exc}")
    except json.JSONDecodeError as exc:
        _fail(EXIT_SCHEMA, f"malformed JSON in {path}: {exc}")


def _parse(model, payload):
    try:
        return model.model_validate(payload)
    except ValidationError as exc:
        _fail(EXIT_SCHEMA, _format_validation_error(exc))


def _format_validation_error(exc: ValidationError) -> str:
    parts = []
    for err in exc.errors():
        loc = list(err["loc"])
        if loc and loc[0] == "ops" and len(loc) > 1 and isinstance(loc[1], int):
            where = f"op {loc[1]} ({'.'.join(str(p) for p in loc[2:])})"
        else:
            where = ".".join(str(p) for p in loc) or "input"
        parts.append(f"{where}: {err['msg']}")
    return "; ".join(parts)


def _canonical_json(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _emit(text: str, out_path: "str | None") -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
    else:
        click.echo(text, nl=False)


def _run_guarded(func):
    try:
        return func()
    except SchemaError as exc:
        _fail(EXIT_SCHEMA, str(exc))
    except PhysicsError as exc:
        _fail(EXIT_PHYSICS, str(exc))


def _post(server: str, route: str, payload) -> dict:
    import httpx

    response = httpx.post(server.rstrip("/") + route, json=payload, timeout=120.0)
    if response.status_code == 200:
        return response.json()
    detail = {}
    try:
        detail = response.json().get("detail", {})
    except ValueError:
        pass
    message = detail.get("message", response.text) if isinstance(detail, dict) else str(detail)
    if response.status_code == 400:
        _fail(EXIT_PHYSICS, message)
    _fail(EXIT_SCHEMA, message)


@click.group()
def main() -> None:
    """Gaussian-state circuit runner and analyzer."""
    _configure_logging()


@main.command()
@click.option("--in", "in_path", required=True, type=click.Path(), help="circuit JSON")
@click.option("--out", "out_path", default=None, type=click.Path(), help="result JSON")
@click.option("--tol", default=1e-9, show_default=True, help="physicality tolerance")
@click.option("--seed", default=None, type=int, help="reserved")
@click.option(
    "--cutoff-check",
    default=None,
    type=int,
    help="cross-validate against the Fock oracle at this cutoff (1-2 mode circuits)",
)
@click.option("--server", default=None, help="POST to a running service instead")
def run(in_path, out_path, tol, seed, cutoff_check, server) -> None:
    """Execute a circuit and write the result JSON."""
    del seed  # reserved for future samplers
    payload = _load_json(in_path)
    circuit = _parse(CircuitSpec, payload)
    request = RunRequest(circuit=circuit, tol=tol, cutoff_check=cutoff_check)
    if server:
        result = _post(server, "/run", request.model_dump(mode="json"))
    else:
        response = _run_guarded(
            lambda: engine.run_circuit(circuit, tol=tol, cutoff_check=cutoff_check)
        )
        result = response.model_dump(mode="json")
    _emit(_canonical_json(result), out_path)


@main.command()
@click.option("--in", "in_path", required=True, type=click.Path())
@click.option("--server", default=None)
def validate(in_path, server) -> None:
    """Schema-check a circuit without executing it."""
    payload = _load_json(in_path)
    circuit = _parse(CircuitSpec, payload)
    if server:
        result = _post(server, "/validate", circuit.model_dump(mode="json"))
    else:
        response = _run_guarded(lambda: engine.validate_circuit(circuit))
        result = response.model_dump(mode="json")
    click.echo(_canonical_json(result), nl=False)


@main.command()
@click.option("--in", "in_path", required=True, type=click.Path(), help="state-spec JSON")
@click.option("--out", "out_path", default=None, type=click.Path())
@click.option("--server", default=None)
def metrics(in_path, out_path, server) -> None:
    """Emit every applicable metric of a state as flat JSON."""
    payload = _load_json(in_path)
    request = _parse(MetricsRequest, {"state": payload})
    if server:
        result = _post(server, "/metrics", request.model_dump(mode="json"))
    else:
        result = _run_guarded(lambda: engine.metrics_for_state(request))
    _emit(_canonical_json(result), out_path)


@main.command()
@click.option(
    "--in", "in_path", required=True, type=click.Path(),
    help='JSON {"a": state-spec, "b": state-spec}',
)
@click.option("--out", "out_path", default=None, type=click.Path())
@click.option("--server", default=None)
def fidelity(in_path, out_path, server) -> None:
    """Overlap and Uhlmann fidelity between two state specs."""
    payload = _load_json(in_path)
    request = _parse(FidelityRequest, payload)
    if server:
        result = _post(server, "/fidelity", request.model_dump(mode="json"))
    else:
        response = _run_guarded(lambda: engine.fidelity_pair(request))
        result = response.model_dump(mode="json")
    _emit(_canonical_json(result), out_path)


@main.command()
@click.option(
    "--in", "in_path", required=True, type=click.Path(),
    help='JSON {"state": state-spec, "grid": grid-spec}',
)
@click.option("--out", "out_path", default=None, type=click.Path(), help="CSV output")
@click.option("--server", default=None)
def wigner(in_path, out_path, server) -> None:
    """Evaluate a Wigner-function grid as CSV with header x,y,w."""
    payload = _load_json(in_path)
    request = _parse(WignerRequest, payload)
    if server:
        import httpx

        response = httpx.post(
            server.rstrip("/") + "/wigner",
            json=request.model_dump(mode="json"),
            timeout=120.0,
        )
        if response.status_code != 200:
            _post(server, "/wigner", request.model_dump(mode="json"))  # raises
        text = response.text
    else:
        def job() -> str:
            state = engine.build_initial(request.state)
            return engine.wigner_csv(state, request.grid)

        text = _run_guarded(job)
    _emit(text, out_path)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True, type=int)
def serve(host, port) -> None:
    """Start the HTTP service."""
    import uvicorn

    from .service import app

    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
