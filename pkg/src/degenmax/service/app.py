"""FastAPI application exposing the degenmax engines.

Engine refusals (exhaustive-search caps, the auto-budget ceiling) map to
HTTP 400 with a machine-readable ``code``; malformed graphs and infeasible
constants map to 400 as well, while schema violations surface as FastAPI's
usual 422.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from .. import __version__
from ..constants import ConstantsError
from ..driver import BudgetError
from ..graph import GraphError
from ..oracle import CapExceeded
from . import handlers, models

app = FastAPI(
    title="degenmax",
    version=__version__,
    description="Randomized sampler, amplified search and exact oracles "
    "for maximum induced d-degenerate subgraphs.",
)

_ERROR_CODES = (
    (CapExceeded, "cap_exceeded"),
    (BudgetError, "budget_refused"),
    (GraphError, "invalid_graph"),
    (ConstantsError, "invalid_constants"),
    (ValueError, "invalid_request"),
)


def _guard(fn, req):
    try:
        return fn(req)
    except tuple(exc for exc, _ in _ERROR_CODES) as err:
        for exc_type, code in _ERROR_CODES:
            if isinstance(err, exc_type):
                raise HTTPException(status_code=400, detail={"code": code, "message": str(err)})
        raise


@app.get("/health")
def health() -> dict:
    return {"status": "ok", "version": __version__}


@app.post("/sample", response_model=models.SampleResponse)
def sample(req: models.SampleRequest) -> models.SampleResponse:
    return _guard(handlers.sample, req)


@app.post("/search", response_model=models.SearchResponse)
def search(req: models.SearchRequest) -> models.SearchResponse:
    return _guard(handlers.search, req)


@app.post("/census", response_model=models.CensusResponse)
def census(req: models.CensusRequest) -> models.CensusResponse:
    return _guard(handlers.census, req)


@app.post("/dist", response_model=models.DistResponse)
def dist(req: models.DistRequest) -> models.DistResponse:
    return _guard(handlers.dist, req)


@app.post("/brute", response_model=models.BruteResponse)
def brute(req: models.BruteRequest) -> models.BruteResponse:
    return _guard(handlers.brute, req)


@app.post("/constants", response_model=models.ConstantsResponse)
def constants(req: models.ConstantsRequest) -> models.ConstantsResponse:
    return _guard(handlers.constants_report, req)


@app.post("/generate", response_model=models.GenerateResponse)
def generate(req: models.GenerateRequest) -> models.GenerateResponse:
    return _guard(handlers.generate_graph, req)
