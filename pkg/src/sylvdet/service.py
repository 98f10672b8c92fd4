"""FastAPI service exposing the verification runner.

Every endpoint is stateless and pure: POST the run options, get the full
report back. Identical requests produce identical reports (sampling is
seed-derived, never wall-clock).
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from .errors import SylvdetError
from .runner import UsageError, run
from .schemas import Report, RunOptions

app = FastAPI(
    title="sylvdet",
    description=(
        "Exact verification of Sylvester-type tridiagonal determinant "
        "identities: closed forms, induction steps, block-triangularization "
        "replays and the q-racah scalar identity, all in exact rational "
        "arithmetic."
    ),
    version="0.1.0",
)


def _run(command: str, opts: RunOptions) -> Report:
    try:
        return run(command, opts)
    except UsageError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from None
    except SylvdetError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from None


@app.get("/healthz")
def healthz() -> dict:
    return {"status": "ok"}


@app.post("/eval", response_model=Report)
def eval_endpoint(opts: RunOptions) -> Report:
    return _run("eval", opts)


@app.post("/verify", response_model=Report)
def verify_endpoint(opts: RunOptions) -> Report:
    return _run("verify", opts)


@app.post("/reduce", response_model=Report)
def reduce_endpoint(opts: RunOptions) -> Report:
    return _run("reduce", opts)


@app.post("/identity", response_model=Report)
def identity_endpoint(opts: RunOptions) -> Report:
    return _run("identity", opts)


@app.post("/table", response_model=Report)
def table_endpoint(opts: RunOptions) -> Report:
    return _run("table", opts)
