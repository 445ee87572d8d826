"""Ground-truth engines, all capped at desk scale.

``brute_force_max`` and ``enumerate_maximal`` answer by (pruned) subset
enumeration. ``exact_distribution`` computes the sampler's full output
distribution by expanding every random branch of the identical dispatch
logic -- it imports the sampler's :func:`pending_rule` and decision
enumerators rather than reimplementing them, so the oracle cannot drift
from the thing it checks.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations

from . import sampler
from .constants import Constants, constants_for
from .graph import Graph, degenerate_mask, from_edges, iter_bits, set_of

BRUTE_FORCE_CAP = 22
CENSUS_CAP = 20
DISTRIBUTION_CAP = 8


class CapExceeded(ValueError):
    """Input is larger than the configured exhaustive-search cap."""


def _check_cap(g: Graph, cap: int, what: str) -> None:
    if g.n > cap:
        raise CapExceeded(f"{what} is capped at n <= {cap}, got n = {g.n}")


def brute_force_max(g: Graph, d: int, cap: int = BRUTE_FORCE_CAP) -> frozenset[int]:
    """Maximum-cardinality vertex set inducing a d-degenerate subgraph.

    Depth-first over include/exclude decisions in ascending vertex order,
    pruning branches that cannot beat the incumbent and include-branches
    that already fail the (hereditary) degeneracy test. Include-first
    ascending order visits equal-size sets in lexicographic order, so the
    first maximum found is the lexicographically smallest and ties never
    need revisiting.
    """
    _check_cap(g, cap, "brute-force maximum")
    best_mask = 0
    best_size = 0
    n = g.n

    def walk(v: int, mask: int, size: int) -> None:
        nonlocal best_mask, best_size
        if size + (n - v) <= best_size:
            return
        if v == n:
            best_mask, best_size = mask, size
            return
        cand = mask | (1 << v)
        if degenerate_mask(g, cand, d):
            walk(v + 1, cand, size + 1)
        walk(v + 1, mask, size)

    walk(0, 0, 0)
    return set_of(best_mask)


def enumerate_maximal(g: Graph, d: int, cap: int = CENSUS_CAP) -> list[frozenset[int]]:
    """All inclusion-wise maximal d-degenerate vertex sets, sorted
    lexicographically. Maximality is semantic: every outside vertex is
    actually tried, not just degree-filtered."""
    _check_cap(g, cap, "maximal-set census")
    out = []
    for mask in range(1 << g.n):
        if not degenerate_mask(g, mask, d):
            continue
        outside = g.full_mask & ~mask
        if any(degenerate_mask(g, mask | (1 << v), d) for v in iter_bits(outside)):
            continue
        out.append(set_of(mask))
    out.sort(key=lambda s: tuple(sorted(s)))
    return out


@dataclass(frozen=True)
class Distribution:
    """Exact output law of a sampler run: set -> probability, plus the
    probability of reporting failure. Totals 1 up to float accumulation."""

    probabilities: dict[frozenset[int], float]
    failure: float

    def probability_of(self, vertices) -> float:
        return self.probabilities.get(frozenset(vertices), 0.0)

    def total(self) -> float:
        return math.fsum(self.probabilities.values()) + self.failure

    def support(self) -> list[frozenset[int]]:
        return sorted(self.probabilities, key=lambda s: tuple(sorted(s)))


def exact_distribution(
    g: Graph, d: int, consts: Constants | None = None, cap: int = DISTRIBUTION_CAP
) -> Distribution:
    """Expand every random branch of the sampler and accumulate the exact
    probability of each possible output set and of failure.

    States are memoized on the committed masks (the future of a run depends
    only on them), and per-state sums use ``math.fsum`` so the total mass is
    reliable to well below the 1e-9 documented tolerance.
    """
    _check_cap(g, cap, "exact distribution")
    if consts is None:
        consts = constants_for(d)
    elif consts.d != d:
        raise ValueError(f"constants were built for d={consts.d}, not d={d}")

    memo: dict[tuple[int, int], tuple[dict[int, float], float]] = {}

    def explore(asg: sampler.PartialAssignment) -> tuple[dict[int, float], float]:
        key = (asg.a, asg.z)
        hit = memo.get(key)
        if hit is not None:
            return hit
        rule, payload = sampler.pending_rule(g, asg, consts)
        outs: dict[int, list[float]] = defaultdict(list)
        fails: list[float] = []
        if rule == sampler.RULE_FINISH:
            q = asg.undecided_mask(g)
            p = 0.5 ** q.bit_count()
            sub = q
            while True:
                final_a = asg.a | sub
                if degenerate_mask(g, final_a, d):
                    outs[final_a].append(p)
                else:
                    fails.append(p)
                if sub == 0:
                    break
                sub = (sub - 1) & q
        else:
            if rule == sampler.RULE_EDGE:
                decisions = [
                    sampler.rule1_decision(payload, i, b)
                    for i in range(len(payload))
                    for b in range(3)
                ]
            elif rule == sampler.RULE_GREEDY:
                decisions = sampler.rule2_decisions(g, asg, payload, consts)
            else:
                decisions = sampler.rule3_decisions(payload)
            for p, to_a, to_z, _ in decisions:
                child_outs, child_fail = explore(sampler.commit(asg, to_a, to_z))
                for mask, cp in child_outs.items():
                    outs[mask].append(p * cp)
                fails.append(p * child_fail)
        result = ({mask: math.fsum(ps) for mask, ps in outs.items()}, math.fsum(fails))
        memo[key] = result
        return result

    outs, failure = explore(sampler.EMPTY)
    return Distribution({set_of(mask): p for mask, p in outs.items()}, failure)


@dataclass(frozen=True)
class CensusCheck:
    within_bound: bool
    count: int
    bound: float


def census_bound(n: int, consts: Constants) -> float:
    """base^n computed from the gap below 2, so the bound is not overstated
    when the plain-double base rounds to 2.0."""
    return 2.0 ** n * math.exp(n * math.log1p(-consts.base_gap / 2.0))


def check_census_bound(g: Graph, d: int, consts: Constants | None = None, cap: int = CENSUS_CAP) -> CensusCheck:
    """Count the maximal d-degenerate sets and compare against base^n."""
    if consts is None:
        consts = constants_for(d)
    count = len(enumerate_maximal(g, d, cap=cap))
    bound = census_bound(g.n, consts)
    return CensusCheck(count <= bound, count, bound)


@lru_cache(maxsize=8)
def nonisomorphic_graphs(n: int) -> tuple[Graph, ...]:
    """Every graph on n vertices up to isomorphism (canonical minimum
    edge-mask representatives). Exhaustive over relabelings, so intended
    for n <= 6."""
    if n == 0:
        return (from_edges(0, []),)
    pairs = list(combinations(range(n), 2))
    index = {pair: i for i, pair in enumerate(pairs)}
    remaps = []
    for perm in permutations(range(n)):
        remaps.append(
            tuple(index[tuple(sorted((perm[u], perm[v])))] for u, v in pairs)
        )
    graphs = []
    for bits in range(1 << len(pairs)):
        on = [i for i in range(len(pairs)) if bits >> i & 1]
        canon = bits
        for remap in remaps:
            relabeled = 0
            for i in on:
                relabeled |= 1 << remap[i]
            if relabeled < canon:
                canon = relabeled
        if canon == bits:
            graphs.append(from_edges(n, [pairs[i] for i in on]))
    return tuple(graphs)
