"""Randomized sampler for maximal d-degenerate induced subgraphs.

A run maintains a partial assignment: vertices committed to the candidate
solution (A), vertices committed to its complement (Z), and the undecided
remainder Q. Rules are tried in a fixed priority order and the first
applicable one fires:

1. dense undecided subgraph: pick a uniform edge of G[Q] and randomly keep
   one endpoint / drop both (three branches, 1/3 each);
2. a low-degree undecided vertex with few committed neighbors: walk its
   undecided neighbors under a geometric law with ratio 1/gamma(r);
3. many undecided vertices already have more than d neighbors in A: drop
   one of them uniformly;
4. nothing else applies (by then more than an alpha fraction of the graph
   is decided -- enforced as a hard assertion): flip a fair coin for every
   remaining vertex, output A if it induces a d-degenerate subgraph and
   report failure otherwise.

Each of rules 1-3 commits at least one vertex, so a run dispatches at most
n of them before the terminal rule 4. The exact-distribution oracle expands
the identical dispatch over all branches; both consumers share
:func:`pending_rule` and the per-rule decision enumerators below, which is
what rules out drift between the sampler and its oracle.

A run is a pure function of (graph, d, constants, seed).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Iterator

from .constants import Constants, constants_for
from .graph import Graph, degenerate_mask, edges_in_mask, edges_within_mask, iter_bits, set_of

RULE_EDGE = 1
RULE_GREEDY = 2
RULE_HEAVY = 3
RULE_FINISH = 4

# A decision is (probability, mask of vertices joining A, mask joining Z,
# trace detail kwargs). Rules 1-3 enumerate theirs explicitly; rule 4's
# branches are the 2^|Q| completions and are materialized only by the
# exact-distribution oracle.
Decision = tuple[float, int, int, dict]


@dataclass(frozen=True)
class PartialAssignment:
    """Bitmasks of the committed vertex sets; Q is everything else."""

    a: int = 0
    z: int = 0

    def undecided_mask(self, g: Graph) -> int:
        return g.full_mask & ~(self.a | self.z)

    def assumed_in(self) -> frozenset[int]:
        return set_of(self.a)

    def assumed_out(self) -> frozenset[int]:
        return set_of(self.z)

    def undecided(self, g: Graph) -> frozenset[int]:
        return set_of(self.undecided_mask(g))


EMPTY = PartialAssignment()


def commit(asg: PartialAssignment, to_a: int, to_z: int) -> PartialAssignment:
    decided = asg.a | asg.z
    if (to_a | to_z) & decided or to_a & to_z:
        raise AssertionError("decision touches already-committed vertices")
    return PartialAssignment(asg.a | to_a, asg.z | to_z)


@dataclass(frozen=True)
class TraceStep:
    """One dispatched rule: the concrete decision and its probability.

    ``decision_index`` is the 1-based branch number for rule 2 (equal to the
    number of vertices the branch commits) and the 0-based branch for
    rule 1. ``pivot`` is the low-degree vertex for rule 2 and the dropped
    vertex for rule 3.
    """

    rule: int
    probability: float
    to_a: tuple[int, ...]
    to_z: tuple[int, ...]
    edge: tuple[int, int] | None = None
    pivot: int | None = None
    neighbor_count: int | None = None
    decision_index: int | None = None


@dataclass(frozen=True)
class SampleOutcome:
    success: bool
    output: frozenset[int] | None
    trace: tuple[TraceStep, ...]

    def path_probability(self) -> float:
        p = 1.0
        for step in self.trace:
            p *= step.probability
        return p


class DispatchError(AssertionError):
    """The coverage floor at the coin-flip finish was violated (a bug, not
    an input condition)."""


def low_degree_vertices(g: Graph, asg: PartialAssignment, consts: Constants) -> tuple[int, ...]:
    """Undecided vertices with fewer than kappa*d undecided neighbors."""
    q = asg.undecided_mask(g)
    adj = g.adj_bits
    return tuple(v for v in iter_bits(q) if (adj[v] & q).bit_count() <= consts.r_max)


def heavy_vertices(g: Graph, asg: PartialAssignment, consts: Constants) -> tuple[int, ...]:
    """Undecided vertices with more than d committed-in neighbors."""
    q = asg.undecided_mask(g)
    adj = g.adj_bits
    d = consts.d
    return tuple(v for v in iter_bits(q) if (adj[v] & asg.a).bit_count() > d)


def rule1_applicable(g: Graph, asg: PartialAssignment, consts: Constants) -> bool:
    """Edge-sampling trigger: |E(G[Q])| >= lam*d*|Q|, with at least one edge
    present (the all-zero case trivially satisfies the inequality but leaves
    nothing to sample)."""
    q = asg.undecided_mask(g)
    mq = edges_within_mask(g, q)
    return mq >= 1 and mq >= consts.lam * consts.d * q.bit_count()


def rule1_decision(edge_pool: list[tuple[int, int]], index: int, branch: int) -> Decision:
    """Branch ``branch`` (0: u->A,v->Z; 1: u->Z,v->A; 2: both->Z) for the
    ``index``-th edge of the pool, with probability 1/(3m)."""
    u, v = edge_pool[index]
    p = 1.0 / (3.0 * len(edge_pool))
    bu, bv = 1 << u, 1 << v
    detail = {"edge": (u, v), "decision_index": branch}
    if branch == 0:
        return p, bu, bv, detail
    if branch == 1:
        return p, bv, bu, detail
    return p, 0, bu | bv, detail


def rule2_candidate(g: Graph, asg: PartialAssignment, consts: Constants) -> int | None:
    """Lowest-numbered undecided vertex with at most r_max undecided
    neighbors and at most d neighbors already committed to A."""
    q = asg.undecided_mask(g)
    adj = g.adj_bits
    for v in iter_bits(q):
        if (adj[v] & q).bit_count() <= consts.r_max and (adj[v] & asg.a).bit_count() <= consts.d:
            return v
    return None


def rule2_decisions(g: Graph, asg: PartialAssignment, v: int, consts: Constants) -> list[Decision]:
    """The r+1 geometric decisions for pivot v with undecided neighbors
    v_1 < ... < v_r: branch i (1 <= i <= r) sends v_1..v_{i-1} to Z and v_i
    to A with weight gamma^-i; branch r+1 sends every neighbor to Z and v
    itself to A with weight gamma^-(r+1). Weights are renormalized by their
    exact float sum so the branch law is a true distribution (the
    perturbation is below 1e-12 per entry)."""
    q = asg.undecided_mask(g)
    nbrs = tuple(iter_bits(g.adj_bits[v] & q))
    r = len(nbrs)
    gamma = consts.gamma_table[r]
    weights = [gamma ** -i for i in range(1, r + 2)]
    total = math.fsum(weights)
    decisions: list[Decision] = []
    z_mask = 0
    for i, w in enumerate(weights[:r], start=1):
        decisions.append(
            (w / total, 1 << nbrs[i - 1], z_mask,
             {"pivot": v, "neighbor_count": r, "decision_index": i})
        )
        z_mask |= 1 << nbrs[i - 1]
    decisions.append(
        (weights[r] / total, 1 << v, z_mask,
         {"pivot": v, "neighbor_count": r, "decision_index": r + 1})
    )
    return decisions


def rule3_applicable(g: Graph, asg: PartialAssignment, consts: Constants) -> bool:
    """Heavy-vertex trigger: at least c*d*|A| heavy vertices, and at least
    one (A empty forces the heavy set empty, where the threshold would be
    vacuous)."""
    heavy = heavy_vertices(g, asg, consts)
    return len(heavy) >= 1 and len(heavy) >= consts.c * consts.d * asg.a.bit_count()


def rule3_decisions(heavy: tuple[int, ...]) -> list[Decision]:
    p = 1.0 / len(heavy)
    return [(p, 0, 1 << v, {"pivot": v}) for v in heavy]


def assert_finish_coverage(g: Graph, asg: PartialAssignment, consts: Constants) -> None:
    """More than an alpha fraction of vertices must be committed whenever
    rules 1-3 are all inapplicable. Violation means the implementation has
    diverged from the dispatch analysis, so this raises unconditionally
    rather than via ``assert`` (vacuous on the empty graph)."""
    decided = (asg.a | asg.z).bit_count()
    if g.n > 0 and not decided > consts.alpha * g.n:
        raise DispatchError(
            f"coin-flip finish reached with {decided}/{g.n} vertices decided; "
            f"floor is alpha*n = {consts.alpha * g.n:.6f}"
        )


def pending_rule(g: Graph, asg: PartialAssignment, consts: Constants):
    """Lowest-numbered applicable rule with its decision population.

    Returns (rule id, payload): the edge pool for rule 1, the pivot vertex
    for rule 2, the heavy-vertex tuple for rule 3, or the undecided vertex
    tuple for rule 4 (after the coverage assertion). Shared verbatim by the
    sampler and the exact-distribution oracle.
    """
    q = asg.undecided_mask(g)
    mq = edges_within_mask(g, q)
    if mq >= 1 and mq >= consts.lam * consts.d * q.bit_count():
        return RULE_EDGE, edges_in_mask(g, q)
    v = rule2_candidate(g, asg, consts)
    if v is not None:
        return RULE_GREEDY, v
    heavy = heavy_vertices(g, asg, consts)
    if len(heavy) >= 1 and len(heavy) >= consts.c * consts.d * asg.a.bit_count():
        return RULE_HEAVY, heavy
    assert_finish_coverage(g, asg, consts)
    return RULE_FINISH, tuple(iter_bits(q))


def _make_step(rule: int, decision: Decision) -> TraceStep:
    p, to_a, to_z, detail = decision
    return TraceStep(
        rule=rule,
        probability=p,
        to_a=tuple(iter_bits(to_a)),
        to_z=tuple(iter_bits(to_z)),
        **detail,
    )


def _sample_decision(decisions: list[Decision], rng: random.Random) -> Decision:
    x = rng.random()
    for dec in decisions:
        x -= dec[0]
        if x < 0.0:
            return dec
    return decisions[-1]


def apply_rule1(
    g: Graph, asg: PartialAssignment, consts: Constants, rng: random.Random
) -> tuple[PartialAssignment, TraceStep]:
    """Uniform edge of G[Q], then one of the three endpoint branches; the
    recorded probability is 1/(3m). Caller guarantees applicability."""
    pool = edges_in_mask(g, asg.undecided_mask(g))
    decision = rule1_decision(pool, rng.randrange(len(pool)), rng.randrange(3))
    return commit(asg, decision[1], decision[2]), _make_step(RULE_EDGE, decision)


def apply_rule2(
    g: Graph, asg: PartialAssignment, v: int, consts: Constants, rng: random.Random
) -> tuple[PartialAssignment, TraceStep]:
    decision = _sample_decision(rule2_decisions(g, asg, v, consts), rng)
    return commit(asg, decision[1], decision[2]), _make_step(RULE_GREEDY, decision)


def apply_rule3(
    g: Graph, asg: PartialAssignment, consts: Constants, rng: random.Random
) -> tuple[PartialAssignment, TraceStep]:
    heavy = heavy_vertices(g, asg, consts)
    decision = rule3_decisions(heavy)[rng.randrange(len(heavy))]
    return commit(asg, decision[1], decision[2]), _make_step(RULE_HEAVY, decision)


def apply_rule4(
    g: Graph, asg: PartialAssignment, consts: Constants, rng: random.Random
) -> SampleOutcome:
    """Fair coin per remaining vertex, then emit A if it induces a
    d-degenerate subgraph and fail otherwise. Asserts the coverage floor on
    entry; failure here is a legitimate outcome, not an error."""
    assert_finish_coverage(g, asg, consts)
    q = asg.undecided_mask(g)
    to_a = 0
    for v in iter_bits(q):
        if rng.getrandbits(1):
            to_a |= 1 << v
    final_a = asg.a | to_a
    step = TraceStep(
        rule=RULE_FINISH,
        probability=0.5 ** q.bit_count(),
        to_a=tuple(iter_bits(to_a)),
        to_z=tuple(iter_bits(q & ~to_a)),
    )
    if degenerate_mask(g, final_a, consts.d):
        return SampleOutcome(True, set_of(final_a), (step,))
    return SampleOutcome(False, None, (step,))


def _coerce_rng(rng: random.Random | int | None) -> random.Random:
    if isinstance(rng, random.Random):
        return rng
    return random.Random(rng)


def run(
    g: Graph,
    d: int,
    consts: Constants | None = None,
    rng: random.Random | int | None = None,
    collect_trace: bool = True,
) -> SampleOutcome:
    """One full sampler run: dispatch the lowest-numbered applicable rule
    until the coin-flip finish fires.

    ``rng`` may be a ``random.Random``, an int seed, or None for a fresh
    unseeded generator. ``collect_trace=False`` skips trace-step
    construction (bulk amplification mode); the sampled distribution is
    identical either way.
    """
    if consts is None:
        consts = constants_for(d)
    elif consts.d != d:
        raise ValueError(f"constants were built for d={consts.d}, not d={d}")
    rng = _coerce_rng(rng)
    asg = EMPTY
    steps: list[TraceStep] = []
    for _ in range(g.n + 1):
        rule, payload = pending_rule(g, asg, consts)
        if rule == RULE_FINISH:
            outcome = apply_rule4(g, asg, consts, rng)
            if not collect_trace:
                return SampleOutcome(outcome.success, outcome.output, ())
            return SampleOutcome(outcome.success, outcome.output, tuple(steps) + outcome.trace)
        if rule == RULE_EDGE:
            decision = rule1_decision(payload, rng.randrange(len(payload)), rng.randrange(3))
        elif rule == RULE_GREEDY:
            decision = _sample_decision(rule2_decisions(g, asg, payload, consts), rng)
        else:
            decision = rule3_decisions(payload)[rng.randrange(len(payload))]
        asg = commit(asg, decision[1], decision[2])
        if collect_trace:
            steps.append(_make_step(rule, decision))
    raise DispatchError("rule dispatch failed to terminate within n steps")


class ReplayError(ValueError):
    """A trace does not correspond to a legal execution path."""


def replay_trace(
    g: Graph, d: int, trace: tuple[TraceStep, ...], consts: Constants | None = None
) -> float:
    """Re-walk a trace, checking each step is a legal decision of the rule
    the dispatcher would fire there and that its recorded probability
    matches the recomputed one to within 1e-12 relative error. Returns the
    product of the recomputed step probabilities."""
    if consts is None:
        consts = constants_for(d)
    asg = EMPTY
    path_p = 1.0
    for idx, step in enumerate(trace):
        rule, payload = pending_rule(g, asg, consts)
        if rule != step.rule:
            raise ReplayError(f"step {idx}: dispatcher fires rule {rule}, trace says {step.rule}")
        a_mask = sum(1 << v for v in step.to_a)
        z_mask = sum(1 << v for v in step.to_z)
        if rule == RULE_FINISH:
            q = asg.undecided_mask(g)
            if (a_mask | z_mask) != q or (a_mask & z_mask):
                raise ReplayError(f"step {idx}: finish does not partition the undecided set")
            expected = 0.5 ** q.bit_count()
        else:
            if rule == RULE_EDGE:
                candidates = [
                    rule1_decision(payload, i, b)
                    for i in range(len(payload))
                    for b in range(3)
                ]
            elif rule == RULE_GREEDY:
                candidates = rule2_decisions(g, asg, payload, consts)
            else:
                candidates = rule3_decisions(payload)
            for p, am, zm, _ in candidates:
                if am == a_mask and zm == z_mask:
                    expected = p
                    break
            else:
                raise ReplayError(f"step {idx}: decision not in the rule-{rule} population")
            asg = commit(asg, a_mask, z_mask)
        if not math.isclose(expected, step.probability, rel_tol=1e-12):
            raise ReplayError(
                f"step {idx}: probability {step.probability!r} != recomputed {expected!r}"
            )
        path_p *= expected
    return path_p


def rule_counts(trace: tuple[TraceStep, ...]) -> dict[int, int]:
    counts = {RULE_EDGE: 0, RULE_GREEDY: 0, RULE_HEAVY: 0, RULE_FINISH: 0}
    for step in trace:
        counts[step.rule] += 1
    return counts
