"""HTTP service wrapping the core package.

Endpoints mirror the command-line subcommands one-to-one; the CLI and the
service share the same typed configuration models and operations, so a
request body is exactly a run configuration document.
"""
from __future__ import annotations

from typing import Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel

from .errors import ConfsurfError
from .reconstruction import ConformalData
from . import service

app = FastAPI(title="confsurf",
              description="Conformal surface invariants, identity checks "
                          "and surface reconstruction.")


def _guard(fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except ConfsurfError as exc:
        raise HTTPException(status_code=422,
                            detail={"error": str(exc),
                                    "exit_code": exc.exit_code})


class CheckRequest(BaseModel):
    suite: str
    config: Optional[service.RunConfig] = None


class ReconstructRequest(BaseModel):
    config: Optional[service.RunConfig] = None
    data: Optional[str] = None          # tabulated conformal data (JSON text)
    seed_transform: Optional[str] = None


@app.get("/health")
def health() -> dict:
    return {"status": "ok"}


@app.get("/catalog")
def catalog() -> dict:
    return service.catalog_listing()


@app.post("/compute")
def compute(config: Optional[service.RunConfig] = None) -> service.ResultSet:
    return _guard(service.run_compute, config or service.RunConfig())


@app.post("/check")
def check(req: CheckRequest) -> dict:
    return _guard(service.run_check, req.suite, req.config)


@app.post("/reconstruct")
def reconstruct(req: ReconstructRequest) -> dict:
    config = req.config or service.RunConfig()
    data = None
    if req.data is not None:
        data = _guard(ConformalData.from_json, req.data)
    transform = _guard(service.parse_seed_transform, req.seed_transform)
    return _guard(service.run_reconstruct, config, data=data,
                  seed_transform=transform)
