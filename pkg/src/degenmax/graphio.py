"""Graph file formats and seeded random-graph generators.

Two text formats are supported:

* ``edgelist`` -- one ``u v`` pair per line with 0-based endpoints,
  ``#`` comments and blank lines ignored, and an optional ``n <count>``
  header (without it, n is one past the largest endpoint);
* ``dimacs`` -- ``c`` comment lines, one ``p edge <n> <m>`` line, then
  ``e <u> <v>`` lines with 1-based endpoints.

Parsers return the collected warnings (duplicate edges, edge-count
mismatches) alongside the graph so callers decide how to surface them.
"""

from __future__ import annotations

import random
from itertools import combinations

from .graph import Graph, from_edges

FORMATS = ("edgelist", "dimacs")


class GraphFormatError(ValueError):
    """Unparseable graph text."""


def parse_graph(text: str, fmt: str = "edgelist") -> tuple[Graph, list[str]]:
    if fmt == "edgelist":
        return _parse_edgelist(text)
    if fmt == "dimacs":
        return _parse_dimacs(text)
    raise GraphFormatError(f"unknown graph format {fmt!r}; expected one of {FORMATS}")


def _parse_edgelist(text: str) -> tuple[Graph, list[str]]:
    warnings: list[str] = []
    n: int | None = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if fields[0] == "n":
            if n is not None:
                raise GraphFormatError(f"line {lineno}: duplicate 'n' header")
            if edges:
                raise GraphFormatError(f"line {lineno}: 'n' header must precede edges")
            if len(fields) != 2:
                raise GraphFormatError(f"line {lineno}: expected 'n <count>'")
            n = _parse_int(fields[1], lineno)
            if n < 0:
                raise GraphFormatError(f"line {lineno}: negative vertex count")
            continue
        if len(fields) != 2:
            raise GraphFormatError(f"line {lineno}: expected 'u v', got {line!r}")
        u, v = _parse_int(fields[0], lineno), _parse_int(fields[1], lineno)
        if u == v:
            raise GraphFormatError(f"line {lineno}: self-loop at vertex {u}")
        if u < 0 or v < 0:
            raise GraphFormatError(f"line {lineno}: negative vertex id")
        if n is not None and (u >= n or v >= n):
            raise GraphFormatError(f"line {lineno}: endpoint outside 0..{n - 1}")
        key = (min(u, v), max(u, v))
        if key in seen:
            warnings.append(f"line {lineno}: duplicate edge ({u}, {v}) collapsed")
            continue
        seen.add(key)
        edges.append(key)
    if n is None:
        n = 1 + max((max(e) for e in edges), default=-1)
    return from_edges(n, edges), warnings


def _parse_dimacs(text: str) -> tuple[Graph, list[str]]:
    warnings: list[str] = []
    n: int | None = None
    declared_m: int | None = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    e_lines = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        fields = line.split()
        if fields[0] == "p":
            if n is not None:
                raise GraphFormatError(f"line {lineno}: duplicate problem line")
            if len(fields) != 4 or fields[1] != "edge":
                raise GraphFormatError(f"line {lineno}: expected 'p edge <n> <m>'")
            n = _parse_int(fields[2], lineno)
            declared_m = _parse_int(fields[3], lineno)
            continue
        if fields[0] == "e":
            if n is None:
                raise GraphFormatError(f"line {lineno}: edge before the problem line")
            if len(fields) != 3:
                raise GraphFormatError(f"line {lineno}: expected 'e <u> <v>'")
            e_lines += 1
            u1, v1 = _parse_int(fields[1], lineno), _parse_int(fields[2], lineno)
            if not (1 <= u1 <= n and 1 <= v1 <= n):
                raise GraphFormatError(f"line {lineno}: endpoint outside 1..{n}")
            if u1 == v1:
                raise GraphFormatError(f"line {lineno}: self-loop at vertex {u1}")
            u, v = u1 - 1, v1 - 1
            key = (min(u, v), max(u, v))
            if key in seen:
                warnings.append(f"line {lineno}: duplicate edge ({u1}, {v1}) collapsed")
                continue
            seen.add(key)
            edges.append(key)
            continue
        raise GraphFormatError(f"line {lineno}: unrecognized line {line!r}")
    if n is None:
        raise GraphFormatError("missing 'p edge <n> <m>' line")
    if declared_m is not None and e_lines != declared_m:
        warnings.append(f"problem line declares {declared_m} edges but {e_lines} were listed")
    return from_edges(n, edges), warnings


def _parse_int(token: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise GraphFormatError(f"line {lineno}: expected an integer, got {token!r}") from None


def serialize_graph(g: Graph, fmt: str = "edgelist") -> str:
    from .graph import edges

    if fmt == "edgelist":
        lines = [f"n {g.n}"]
        lines += [f"{u} {v}" for u, v in edges(g)]
        return "\n".join(lines) + "\n"
    if fmt == "dimacs":
        lines = [f"p edge {g.n} {g.m}"]
        lines += [f"e {u + 1} {v + 1}" for u, v in edges(g)]
        return "\n".join(lines) + "\n"
    raise GraphFormatError(f"unknown graph format {fmt!r}; expected one of {FORMATS}")


def gnp(n: int, p: float, seed: int) -> Graph:
    """Independent-edges random graph; deterministic for a given seed
    (pairs are scanned in ascending order)."""
    if n < 0:
        raise ValueError(f"vertex count must be nonnegative, got {n}")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"edge probability must be in [0, 1], got {p}")
    rnd = random.Random(seed)
    edges = [(u, v) for u, v in combinations(range(n), 2) if rnd.random() < p]
    return from_edges(n, edges)


def gnm(n: int, m: int, seed: int) -> Graph:
    """Uniform m-edge random graph; deterministic for a given seed."""
    if n < 0:
        raise ValueError(f"vertex count must be nonnegative, got {n}")
    pairs = list(combinations(range(n), 2))
    if not 0 <= m <= len(pairs):
        raise ValueError(f"edge count must be in 0..{len(pairs)}, got {m}")
    rnd = random.Random(seed)
    return from_edges(n, rnd.sample(pairs, m))


def generate(model: str, n: int, seed: int, p: float | None = None, m: int | None = None) -> Graph:
    if model == "gnp":
        if p is None:
            raise ValueError("gnp requires an edge probability p")
        return gnp(n, p, seed)
    if model == "gnm":
        if m is None:
            raise ValueError("gnm requires an edge count m")
        return gnm(n, m, seed)
    raise ValueError(f"unknown model {model!r}; expected 'gnp' or 'gnm'")
