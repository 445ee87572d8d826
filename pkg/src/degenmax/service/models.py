"""Request/response schemas for the degenmax service.

Every response echoes the effective configuration (seed, constants, budget,
...) so a JSON report alone is enough to replay the computation bit for
bit. Vertex sets travel as sorted integer lists.
"""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

from .. import constants as consts_mod
from ..graph import Graph, edges, from_edges


class GraphPayload(BaseModel):
    """Wire form of a graph: vertex count plus an edge list."""

    n: int = Field(ge=0)
    edges: list[tuple[int, int]] = Field(default_factory=list)

    def to_graph(self) -> Graph:
        return from_edges(self.n, self.edges)

    @classmethod
    def from_graph(cls, g: Graph) -> "GraphPayload":
        return cls(n=g.n, edges=edges(g))


class ConstantsOverride(BaseModel):
    """Optional parameter overrides; omitted fields fall back to the
    built-in table (d <= 6) or the tuner."""

    model_config = ConfigDict(populate_by_name=True)

    lam: Optional[float] = Field(default=None, alias="lambda")
    kappa: Optional[float] = None
    c: Optional[float] = None
    tuned: bool = False

    def resolve(self, d: int) -> consts_mod.Constants:
        return consts_mod.resolve(d, lam=self.lam, kappa=self.kappa, c=self.c, prefer_tuned=self.tuned)


def resolve_constants(d: int, override: ConstantsOverride | None) -> consts_mod.Constants:
    if override is None:
        return consts_mod.resolve(d)
    return override.resolve(d)


class ConstantsReport(BaseModel):
    """Effective constants, gaps included so strict below-2 facts survive
    serialization even when the plain double rounds to 2.0."""

    model_config = ConfigDict(populate_by_name=True)

    d: int
    lam: float = Field(alias="lambda")
    kappa: float
    c: float
    alpha: float
    base: float
    base_gap: float
    r_max: int
    gamma_max: float
    gamma_max_gap: float
    source: str

    @classmethod
    def from_constants(cls, c: consts_mod.Constants) -> "ConstantsReport":
        return cls(
            d=c.d,
            lam=c.lam,
            kappa=c.kappa,
            c=c.c,
            alpha=c.alpha,
            base=c.base,
            base_gap=c.base_gap,
            r_max=c.r_max,
            gamma_max=c.gamma_table[c.r_max],
            gamma_max_gap=c.gamma_gaps[c.r_max],
            source=c.source,
        )


class TraceStepModel(BaseModel):
    rule: int
    probability: float
    to_a: list[int]
    to_z: list[int]
    edge: Optional[tuple[int, int]] = None
    pivot: Optional[int] = None
    neighbor_count: Optional[int] = None
    decision_index: Optional[int] = None


class SampleRequest(BaseModel):
    graph: GraphPayload
    d: int = Field(default=1, ge=1)
    seed: Optional[int] = None
    constants: Optional[ConstantsOverride] = None
    runs: int = Field(default=1, ge=1)
    include_trace: bool = True


class OutcomeFrequency(BaseModel):
    vertices: Optional[list[int]]  # None aggregates the failure outcomes
    count: int
    frequency: float


class SampleResponse(BaseModel):
    d: int
    seed: int
    constants: ConstantsReport
    runs: int
    success: Optional[bool] = None
    output: Optional[list[int]] = None
    output_size: Optional[int] = None
    path_probability: Optional[float] = None
    trace: Optional[list[TraceStepModel]] = None
    success_rate: Optional[float] = None
    histogram: Optional[list[OutcomeFrequency]] = None
    wall_time_sec: float


class SearchRequest(BaseModel):
    graph: GraphPayload
    d: int = Field(default=1, ge=1)
    seed: Optional[int] = None
    constants: Optional[ConstantsOverride] = None
    budget: int | Literal["auto"] = "auto"
    workers: int = Field(default=1, ge=1, le=128)
    target_size: Optional[int] = None
    budget_ceiling: Optional[int] = None


class SearchResponse(BaseModel):
    d: int
    seed: int
    constants: ConstantsReport
    budget_requested: int | Literal["auto"]
    budget: int
    workers: int
    target_size: Optional[int]
    best: list[int]
    best_size: int
    runs_executed: int
    success_rate: float
    wall_time_sec: float


class CensusRequest(BaseModel):
    graph: GraphPayload
    d: int = Field(default=1, ge=1)
    constants: Optional[ConstantsOverride] = None
    cap: int = Field(default=20, ge=0)


class CensusResponse(BaseModel):
    d: int
    constants: ConstantsReport
    maximal_sets: list[list[int]]
    count: int
    bound: float
    within_bound: bool
    wall_time_sec: float


class DistRequest(BaseModel):
    graph: GraphPayload
    d: int = Field(default=1, ge=1)
    constants: Optional[ConstantsOverride] = None
    cap: int = Field(default=8, ge=0)


class OutcomeProbability(BaseModel):
    vertices: list[int]
    probability: float


class DistResponse(BaseModel):
    d: int
    constants: ConstantsReport
    outcomes: list[OutcomeProbability]
    failure: float
    total_mass: float
    wall_time_sec: float


class BruteRequest(BaseModel):
    graph: GraphPayload
    d: int = Field(default=1, ge=1)
    cap: int = Field(default=22, ge=0)


class BruteResponse(BaseModel):
    d: int
    best: list[int]
    best_size: int
    wall_time_sec: float


class ConstantsRequest(BaseModel):
    d: int = Field(default=1, ge=1)
    constants: Optional[ConstantsOverride] = None


class ConstantsResponse(BaseModel):
    report: ConstantsReport
    gamma_table: list[float]
    gamma_gaps: list[float]


class GenerateRequest(BaseModel):
    model: Literal["gnp", "gnm"]
    n: int = Field(ge=0)
    p: Optional[float] = None
    m: Optional[int] = None
    seed: Optional[int] = None


class GenerateResponse(BaseModel):
    model: Literal["gnp", "gnm"]
    n: int
    p: Optional[float]
    m: Optional[int]
    seed: int
    graph: GraphPayload
