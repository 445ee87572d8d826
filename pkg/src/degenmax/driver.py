"""Amplification: many independent sampler runs, reduced to the best find.

Each run owns an RNG stream derived from (base seed, run index) through a
``numpy`` ``SeedSequence``, so a search is a pure function of its inputs
and the reduction is a deterministic fold over run indices regardless of
how many worker processes execute the runs.
"""

from __future__ import annotations

import math
import os
import random
import secrets
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .constants import Constants, constants_for
from .graph import Graph
from .sampler import run

BUDGET_CEILING_ENV = "DEGENMAX_BUDGET_CEILING"
DEFAULT_BUDGET_CEILING = 2 ** 30

_WILSON_Z = 1.959963984540054  # two-sided 95%


class BudgetError(ValueError):
    """Requested (or auto-derived) run budget is unusable."""


def stream_rng(base_seed: int, index: int) -> random.Random:
    """Independent per-run generator for (base_seed, index)."""
    ss = np.random.SeedSequence(entropy=base_seed, spawn_key=(index,))
    return random.Random(int.from_bytes(ss.generate_state(4).tobytes(), "little"))


def fresh_seed() -> int:
    return secrets.randbits(63)


def auto_budget(g: Graph, consts: Constants, ceiling: int | None = None) -> int:
    """ceil(base^n) runs -- enough for >= 1/2 probability of hitting any
    fixed maximal set -- refused above the ceiling (env
    ``DEGENMAX_BUDGET_CEILING`` overrides the 2^30 default)."""
    if ceiling is None:
        ceiling = int(os.environ.get(BUDGET_CEILING_ENV, DEFAULT_BUDGET_CEILING))
    if g.n >= 63:
        raise BudgetError(
            f"auto budget would be ~2^{g.n} runs for n = {g.n}; pass an explicit budget"
        )
    budget = math.ceil(2.0 ** g.n * math.exp(g.n * math.log1p(-consts.base_gap / 2.0)))
    if budget > ceiling:
        raise BudgetError(
            f"auto budget {budget} exceeds the ceiling {ceiling} "
            f"(override via {BUDGET_CEILING_ENV} or pass an explicit budget)"
        )
    return budget


@dataclass(frozen=True)
class SearchReport:
    best_set: frozenset[int]
    best_size: int
    runs_executed: int
    budget: int
    base_seed: int
    wall_time: float
    success_rate: float
    d: int


def _run_block(
    g: Graph,
    d: int,
    consts: Constants,
    base_seed: int,
    start: int,
    count: int,
    target_size: int | None,
) -> tuple[int, int, int, tuple[int, ...] | None, int]:
    """Execute runs start..start+count-1; returns (executed, successes,
    best_size, best_set, best_index). Sequential early exit happens only
    when a target size is given."""
    best_size = -1
    best_set: tuple[int, ...] | None = None
    best_index = -1
    successes = 0
    executed = 0
    for i in range(start, start + count):
        outcome = run(g, d, consts, stream_rng(base_seed, i), collect_trace=False)
        executed += 1
        if outcome.success:
            successes += 1
            size = len(outcome.output)
            if size > best_size:
                best_size, best_set, best_index = size, tuple(sorted(outcome.output)), i
                if target_size is not None and best_size >= target_size:
                    break
    return executed, successes, best_size, best_set, best_index


def search_max(
    g: Graph,
    d: int,
    consts: Constants | None = None,
    budget: int | str = "auto",
    base_seed: int | None = None,
    workers: int = 1,
    target_size: int | None = None,
    ceiling: int | None = None,
) -> SearchReport:
    """Run ``budget`` independent samples and report the largest success.

    Ties go to the earliest run index, and the reduction is ordered by
    index, so the report does not depend on the worker count. The optional
    ``target_size`` enables early exit once a set of that size is found
    (off by default; with multiple workers the stop lands on a block
    boundary, so ``runs_executed`` may then vary with ``workers``).
    """
    if consts is None:
        consts = constants_for(d)
    elif consts.d != d:
        raise ValueError(f"constants were built for d={consts.d}, not d={d}")
    if budget == "auto":
        budget = auto_budget(g, consts, ceiling)
    elif not isinstance(budget, int) or budget < 1:
        raise BudgetError(f"budget must be a positive integer or 'auto', got {budget!r}")
    if base_seed is None:
        base_seed = fresh_seed()

    t0 = time.perf_counter()
    best_size = -1
    best_set: tuple[int, ...] | None = None
    best_index = -1
    successes = 0
    executed = 0

    def fold(block):
        nonlocal best_size, best_set, best_index, successes, executed
        b_exec, b_succ, b_size, b_set, b_index = block
        executed += b_exec
        successes += b_succ
        if b_set is not None and (b_size > best_size or (b_size == best_size and b_index < best_index)):
            best_size, best_set, best_index = b_size, b_set, b_index

    if workers <= 1:
        fold(_run_block(g, d, consts, base_seed, 0, budget, target_size))
    else:
        block_size = max(1, min(4096, -(-budget // (workers * 4))))
        starts = list(range(0, budget, block_size))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            if target_size is None:
                jobs = [
                    (g, d, consts, base_seed, s, min(block_size, budget - s), None)
                    for s in starts
                ]
                for block in pool.map(_run_block_star, jobs):
                    fold(block)
            else:
                for wave_start in range(0, len(starts), workers):
                    wave = starts[wave_start : wave_start + workers]
                    jobs = [
                        (g, d, consts, base_seed, s, min(block_size, budget - s), target_size)
                        for s in wave
                    ]
                    for block in pool.map(_run_block_star, jobs):
                        fold(block)
                    if best_size >= target_size:
                        break

    wall = time.perf_counter() - t0
    return SearchReport(
        best_set=frozenset(best_set) if best_set is not None else frozenset(),
        best_size=max(best_size, 0),
        runs_executed=executed,
        budget=budget,
        base_seed=base_seed,
        wall_time=wall,
        success_rate=successes / executed if executed else 0.0,
        d=d,
    )


def _run_block_star(args):
    return _run_block(*args)


@dataclass(frozen=True)
class ProbabilityEstimate:
    estimate: float
    low: float
    high: float
    hits: int
    trials: int


def wilson_interval(hits: int, trials: int, z: float = _WILSON_Z) -> tuple[float, float]:
    if trials < 1:
        raise ValueError("trials must be >= 1")
    phat = hits / trials
    denom = 1.0 + z * z / trials
    center = (phat + z * z / (2.0 * trials)) / denom
    half = z * math.sqrt(phat * (1.0 - phat) / trials + z * z / (4.0 * trials * trials)) / denom
    # at 0 or all hits the exact endpoints are 0 and 1; don't let float
    # rounding leave a stray 1e-19 residue there
    low = 0.0 if hits == 0 else max(0.0, center - half)
    high = 1.0 if hits == trials else min(1.0, center + half)
    return low, high


def estimate_probability(
    g: Graph,
    d: int,
    consts: Constants | None = None,
    target=(),
    trials: int = 10_000,
    base_seed: int | None = None,
) -> ProbabilityEstimate:
    """Empirical probability that a run outputs exactly ``target``, with a
    95% Wilson score interval. Failures and other outputs count as misses."""
    if consts is None:
        consts = constants_for(d)
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if base_seed is None:
        base_seed = fresh_seed()
    wanted = frozenset(target)
    hits = 0
    for i in range(trials):
        outcome = run(g, d, consts, stream_rng(base_seed, i), collect_trace=False)
        if outcome.success and outcome.output == wanted:
            hits += 1
    low, high = wilson_interval(hits, trials)
    return ProbabilityEstimate(hits / trials, low, high, hits, trials)
