"""Shared test fixtures: tiny graphs, independent oracles, a consistent-path
walker. Everything here is deliberately naive -- the point is to check the
package's clever paths against definitional ones."""

from __future__ import annotations

import math
import random
from itertools import combinations

from degenmax.constants import Constants
from degenmax.graph import Graph, from_edges, iter_bits
from degenmax.graphio import gnp
from degenmax import sampler


def k_complete(n: int) -> Graph:
    return from_edges(n, list(combinations(range(n), 2)))


def cycle(n: int) -> Graph:
    return from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return from_edges(n, [(i, i + 1) for i in range(n - 1)])


def edgeless(n: int) -> Graph:
    return from_edges(n, [])


def star(leaves: int) -> Graph:
    return from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def induced_degree(g: Graph, mask: int, v: int) -> int:
    return (g.adj_bits[v] & mask).bit_count()


def definitional_degenerate(g: Graph, mask: int, d: int) -> bool:
    """Straight from the definition: every nonempty subset of the set has a
    vertex of induced degree at most d. Exponential; n <= ~12 only."""
    sub = mask
    while True:
        if sub and all(induced_degree(g, sub, v) > d for v in iter_bits(sub)):
            return False
        if sub == 0:
            return True
        sub = (sub - 1) & mask


def maximal_sets_by_scan(g: Graph, d: int) -> list[frozenset[int]]:
    """Independent census for cross-checks: full subset scan with the
    definitional degeneracy test."""
    out = []
    for mask in range(1 << g.n):
        if not definitional_degenerate(g, mask, d):
            continue
        outside = g.full_mask & ~mask
        if any(definitional_degenerate(g, mask | (1 << v), d) for v in iter_bits(outside)):
            continue
        out.append(frozenset(iter_bits(mask)))
    out.sort(key=lambda s: tuple(sorted(s)))
    return out


def random_graph_corpus(count: int, sizes: tuple[int, ...], seed: int) -> list[Graph]:
    rnd = random.Random(seed)
    graphs = []
    for _ in range(count):
        n = rnd.choice(sizes)
        graphs.append(gnp(n, rnd.uniform(0.15, 0.85), rnd.randrange(2 ** 31)))
    return graphs


def search_floor_hits(args) -> tuple[int, int]:
    """One graph's worth of amplified searches for the success-floor check:
    returns (hits, seeds). Top-level so a process pool can ship it."""
    g, d, seeds, optimum = args
    from degenmax.constants import defaults
    from degenmax.driver import search_max

    consts = defaults(d)
    hits = 0
    for seed in range(seeds):
        report = search_max(
            g, d, consts, budget="auto", base_seed=seed, target_size=optimum
        )
        hits += report.best_size >= optimum
    return hits, seeds


def consistent_decisions(rule: int, decisions, x_mask: int):
    """Decisions of one dispatched rule that keep A inside X and Z outside."""
    keep = []
    for dec in decisions:
        _, to_a, to_z, _ = dec
        if to_a & ~x_mask or to_z & x_mask:
            continue
        keep.append(dec)
    return keep


def walk_consistent_paths(g: Graph, consts: Constants, x_mask: int, check=None):
    """DFS over every execution path that stays consistent with the fixed
    maximal set X; returns the summed probability of those paths (which is
    exactly the probability of outputting X).

    ``check(rule, asg, decisions, consistent)`` is invoked at every interior
    state for per-step assertions.
    """
    total = []

    def explore(asg: sampler.PartialAssignment, path_p: float) -> None:
        rule, payload = sampler.pending_rule(g, asg, consts)
        if rule == sampler.RULE_FINISH:
            q = asg.undecided_mask(g)
            # exactly one consistent completion: Q&X up, the rest down
            p = 0.5 ** q.bit_count()
            final_a = asg.a | (q & x_mask)
            assert final_a == x_mask, "consistent path must reassemble X"
            total.append(path_p * p)
            return
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
        consistent = consistent_decisions(rule, decisions, x_mask)
        if check is not None:
            check(rule, asg, decisions, consistent)
        for p, to_a, to_z, _ in consistent:
            explore(sampler.commit(asg, to_a, to_z), path_p * p)

    explore(sampler.EMPTY, 1.0)
    return math.fsum(total)
