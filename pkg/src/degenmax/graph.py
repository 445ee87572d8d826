"""Immutable simple undirected graphs with degeneracy peeling.

Vertices are the integers ``0..n-1``. Vertex sets cross the public API as
plain ``frozenset`` objects; internally every routine works on integer
bitmasks, which gives the fast path for small graphs while still covering
arbitrary ``n`` (Python ints are unbounded). All operations here are pure
and instances are safe to share between worker processes.
"""

from __future__ import annotations

from typing import Iterable, Iterator


class GraphError(ValueError):
    """Malformed graph input: bad endpoints, self-loops, empty-set queries."""


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def set_of(mask: int) -> frozenset[int]:
    return frozenset(iter_bits(mask))


class Graph:
    """Simple undirected graph; no self-loops, no parallel edges."""

    __slots__ = ("n", "m", "neighbors", "adj_bits", "full_mask")

    def __init__(self, n: int, adj_bits: tuple[int, ...]):
        self.n = n
        self.adj_bits = adj_bits
        self.neighbors = tuple(set_of(bits) for bits in adj_bits)
        self.m = sum(bits.bit_count() for bits in adj_bits) // 2
        self.full_mask = (1 << n) - 1

    def degree(self, v: int) -> int:
        return self.adj_bits[v].bit_count()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adj_bits == other.adj_bits

    def __hash__(self) -> int:
        return hash((self.n, self.adj_bits))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def from_edges(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a graph from an edge list; duplicates collapse silently.

    Raises :class:`GraphError` on endpoints outside ``0..n-1`` or self-loops.
    """
    if n < 0:
        raise GraphError(f"vertex count must be nonnegative, got {n}")
    adj = [0] * n
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph(n, tuple(adj))


def edges(g: Graph) -> list[tuple[int, int]]:
    """All edges as ascending (u, v) pairs with u < v, sorted."""
    return edges_in_mask(g, g.full_mask)


def mask_of(g: Graph, vertices: Iterable[int]) -> int:
    """Bitmask of a vertex collection, validating membership in 0..n-1."""
    mask = 0
    for v in vertices:
        if not 0 <= v < g.n:
            raise GraphError(f"vertex {v} outside 0..{g.n - 1}")
        mask |= 1 << v
    return mask


def edges_within_mask(g: Graph, mask: int) -> int:
    adj = g.adj_bits
    return sum((adj[v] & mask).bit_count() for v in iter_bits(mask)) // 2


def edges_within(g: Graph, vertices: Iterable[int]) -> int:
    """Number of edges with both endpoints in the given set."""
    return edges_within_mask(g, mask_of(g, vertices))


def edges_in_mask(g: Graph, mask: int) -> list[tuple[int, int]]:
    """Edges induced by ``mask`` as ascending (u, v) pairs, u < v, sorted."""
    adj = g.adj_bits
    out = []
    for u in iter_bits(mask):
        above = adj[u] & mask & ~((1 << (u + 1)) - 1)
        for v in iter_bits(above):
            out.append((u, v))
    return out


def iter_edges_within(g: Graph, vertices: Iterable[int]) -> Iterator[tuple[int, int]]:
    return iter(edges_in_mask(g, mask_of(g, vertices)))


def degenerate_mask(g: Graph, mask: int, d: int) -> bool:
    """Peeling test on a bitmask; the empty mask is vacuously degenerate.

    Always removes the lowest-numbered vertex of residual degree <= d, so a
    run of the test is fully deterministic; the verdict itself does not
    depend on the peeling order.
    """
    adj = g.adj_bits
    while mask:
        rest = mask
        pick = -1
        while rest:
            low = rest & -rest
            v = low.bit_length() - 1
            if (adj[v] & mask).bit_count() <= d:
                pick = v
                break
            rest ^= low
        if pick < 0:
            return False
        mask ^= 1 << pick
    return True


def is_degenerate(g: Graph, vertices: Iterable[int], d: int) -> bool:
    """True iff the subgraph induced by the set is d-degenerate."""
    if d < 0:
        raise GraphError(f"degeneracy order must be nonnegative, got {d}")
    return degenerate_mask(g, mask_of(g, vertices), d)


def is_maximal_degenerate(g: Graph, vertices: Iterable[int], d: int) -> bool:
    """Semantic maximality: degenerate, and no single outside vertex fits.

    This is the try-every-vertex check, strictly stronger than the necessary
    condition that every outside vertex has more than d neighbors inside.
    """
    mask = mask_of(g, vertices)
    if not degenerate_mask(g, mask, d):
        return False
    outside = g.full_mask & ~mask
    for v in iter_bits(outside):
        if degenerate_mask(g, mask | (1 << v), d):
            return False
    return True


def degeneracy_mask(g: Graph, mask: int) -> int:
    if mask == 0:
        raise GraphError("degeneracy of an empty vertex set is undefined")
    adj = g.adj_bits
    worst = 0
    while mask:
        pick = -1
        pick_deg = g.n + 1
        for v in iter_bits(mask):
            deg = (adj[v] & mask).bit_count()
            if deg < pick_deg:
                pick, pick_deg = v, deg
        worst = max(worst, pick_deg)
        mask ^= 1 << pick
    return worst


def degeneracy(g: Graph, vertices: Iterable[int]) -> int:
    """Smallest d for which the induced subgraph is d-degenerate.

    Equals the largest residual degree seen while repeatedly deleting a
    minimum-degree vertex. Raises on an empty set.
    """
    return degeneracy_mask(g, mask_of(g, vertices))
