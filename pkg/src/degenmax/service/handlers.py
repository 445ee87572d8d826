"""Engine orchestration behind the HTTP routes.

These functions are plain request-model -> response-model calls; the
FastAPI app wires them to routes and the CLI invokes them directly when no
remote server is configured, so both entry points share one code path.
"""

from __future__ import annotations

import time
from collections import Counter

from .. import driver, oracle, sampler
from ..graphio import generate
from . import models


def _trace_models(trace) -> list[models.TraceStepModel]:
    return [
        models.TraceStepModel(
            rule=s.rule,
            probability=s.probability,
            to_a=list(s.to_a),
            to_z=list(s.to_z),
            edge=s.edge,
            pivot=s.pivot,
            neighbor_count=s.neighbor_count,
            decision_index=s.decision_index,
        )
        for s in trace
    ]


def sample(req: models.SampleRequest) -> models.SampleResponse:
    g = req.graph.to_graph()
    consts = models.resolve_constants(req.d, req.constants)
    seed = req.seed if req.seed is not None else driver.fresh_seed()
    t0 = time.perf_counter()
    if req.runs == 1:
        outcome = sampler.run(g, req.d, consts, driver.stream_rng(seed, 0))
        return models.SampleResponse(
            d=req.d,
            seed=seed,
            constants=models.ConstantsReport.from_constants(consts),
            runs=1,
            success=outcome.success,
            output=sorted(outcome.output) if outcome.success else None,
            output_size=len(outcome.output) if outcome.success else None,
            path_probability=outcome.path_probability(),
            trace=_trace_models(outcome.trace) if req.include_trace else None,
            wall_time_sec=time.perf_counter() - t0,
        )
    counter: Counter = Counter()
    successes = 0
    for i in range(req.runs):
        outcome = sampler.run(g, req.d, consts, driver.stream_rng(seed, i), collect_trace=False)
        if outcome.success:
            successes += 1
            counter[tuple(sorted(outcome.output))] += 1
        else:
            counter[None] += 1
    histogram = [
        models.OutcomeFrequency(
            vertices=list(key) if key is not None else None,
            count=count,
            frequency=count / req.runs,
        )
        for key, count in counter.most_common()
    ]
    return models.SampleResponse(
        d=req.d,
        seed=seed,
        constants=models.ConstantsReport.from_constants(consts),
        runs=req.runs,
        success_rate=successes / req.runs,
        histogram=histogram,
        wall_time_sec=time.perf_counter() - t0,
    )


def search(req: models.SearchRequest) -> models.SearchResponse:
    g = req.graph.to_graph()
    consts = models.resolve_constants(req.d, req.constants)
    seed = req.seed if req.seed is not None else driver.fresh_seed()
    report = driver.search_max(
        g,
        req.d,
        consts,
        budget=req.budget,
        base_seed=seed,
        workers=req.workers,
        target_size=req.target_size,
        ceiling=req.budget_ceiling,
    )
    return models.SearchResponse(
        d=req.d,
        seed=seed,
        constants=models.ConstantsReport.from_constants(consts),
        budget_requested=req.budget,
        budget=report.budget,
        workers=req.workers,
        target_size=req.target_size,
        best=sorted(report.best_set),
        best_size=report.best_size,
        runs_executed=report.runs_executed,
        success_rate=report.success_rate,
        wall_time_sec=report.wall_time,
    )


def census(req: models.CensusRequest) -> models.CensusResponse:
    g = req.graph.to_graph()
    consts = models.resolve_constants(req.d, req.constants)
    t0 = time.perf_counter()
    maximal = oracle.enumerate_maximal(g, req.d, cap=req.cap)
    bound = oracle.census_bound(g.n, consts)
    return models.CensusResponse(
        d=req.d,
        constants=models.ConstantsReport.from_constants(consts),
        maximal_sets=[sorted(s) for s in maximal],
        count=len(maximal),
        bound=bound,
        within_bound=len(maximal) <= bound,
        wall_time_sec=time.perf_counter() - t0,
    )


def dist(req: models.DistRequest) -> models.DistResponse:
    g = req.graph.to_graph()
    consts = models.resolve_constants(req.d, req.constants)
    t0 = time.perf_counter()
    distribution = oracle.exact_distribution(g, req.d, consts, cap=req.cap)
    outcomes = [
        models.OutcomeProbability(vertices=sorted(s), probability=distribution.probabilities[s])
        for s in distribution.support()
    ]
    outcomes.sort(key=lambda o: (-o.probability, o.vertices))
    return models.DistResponse(
        d=req.d,
        constants=models.ConstantsReport.from_constants(consts),
        outcomes=outcomes,
        failure=distribution.failure,
        total_mass=distribution.total(),
        wall_time_sec=time.perf_counter() - t0,
    )


def brute(req: models.BruteRequest) -> models.BruteResponse:
    g = req.graph.to_graph()
    t0 = time.perf_counter()
    best = oracle.brute_force_max(g, req.d, cap=req.cap)
    return models.BruteResponse(
        d=req.d,
        best=sorted(best),
        best_size=len(best),
        wall_time_sec=time.perf_counter() - t0,
    )


def constants_report(req: models.ConstantsRequest) -> models.ConstantsResponse:
    consts = models.resolve_constants(req.d, req.constants)
    return models.ConstantsResponse(
        report=models.ConstantsReport.from_constants(consts),
        gamma_table=list(consts.gamma_table),
        gamma_gaps=list(consts.gamma_gaps),
    )


def generate_graph(req: models.GenerateRequest) -> models.GenerateResponse:
    seed = req.seed if req.seed is not None else driver.fresh_seed()
    g = generate(req.model, req.n, seed, p=req.p, m=req.m)
    return models.GenerateResponse(
        model=req.model,
        n=req.n,
        p=req.p,
        m=req.m,
        seed=seed,
        graph=models.GraphPayload.from_graph(g),
    )
