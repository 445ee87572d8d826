"""Thin command-line client for the degenmax service.

Every subcommand builds the same pydantic request the HTTP API accepts and
either calls the service handler in-process (default) or POSTs it to a
running server (``--server http://host:port``). File parsing and
serialization happen client-side; all randomness flows from a single
``--seed`` flag, drawn from system entropy and echoed when absent.

Exit codes: 0 success, 1 engine-refused precondition (exhaustive-search
caps, the auto-budget ceiling, infeasible constants), 2 usage or input
errors.
"""

from __future__ import annotations

import argparse
import json
import secrets
import sys
from pathlib import Path

from .constants import ConstantsError
from .driver import BudgetError
from .graph import Graph, GraphError
from .graphio import FORMATS, GraphFormatError, parse_graph, serialize_graph
from .oracle import CapExceeded
from .service import handlers, models

USAGE_ERROR = 2
ENGINE_REFUSED = 1


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _client(server: str):
    import httpx

    return httpx.Client(base_url=server, timeout=None)


def _call(args, endpoint: str, request, response_type):
    """Dispatch a request model in-process or to ``--server``."""
    if not getattr(args, "server", None):
        handler = {
            "sample": handlers.sample,
            "search": handlers.search,
            "census": handlers.census,
            "dist": handlers.dist,
            "brute": handlers.brute,
            "constants": handlers.constants_report,
            "generate": handlers.generate_graph,
        }[endpoint]
        try:
            return handler(request)
        except (CapExceeded, BudgetError, ConstantsError) as err:
            raise CliError(str(err), ENGINE_REFUSED) from err
        except (GraphError, ValueError) as err:
            raise CliError(str(err), USAGE_ERROR) from err
    with _client(args.server) as client:
        resp = client.post(f"/{endpoint}", json=request.model_dump(mode="json", by_alias=True))
    if resp.status_code == 200:
        return response_type.model_validate(resp.json())
    if resp.status_code == 422:
        raise CliError(f"server rejected the request: {resp.text}", USAGE_ERROR)
    detail = {}
    try:
        detail = resp.json().get("detail", {})
    except ValueError:
        pass
    code = ENGINE_REFUSED if detail.get("code") in ("cap_exceeded", "budget_refused", "invalid_constants") else USAGE_ERROR
    raise CliError(detail.get("message", resp.text), code)


def _read_graph(args) -> tuple[Graph, list[str]]:
    if args.graph == "-":
        text = sys.stdin.read()
    else:
        path = Path(args.graph)
        if not path.exists():
            raise CliError(f"no such file: {args.graph}", USAGE_ERROR)
        text = path.read_text()
    try:
        return parse_graph(text, args.format)
    except (GraphFormatError, GraphError) as err:
        raise CliError(f"{args.graph}: {err}", USAGE_ERROR) from err


def _constants_override(args) -> models.ConstantsOverride | None:
    lam = getattr(args, "lam", None)
    kappa = getattr(args, "kappa", None)
    c = getattr(args, "c", None)
    tuned = getattr(args, "tune", False)
    if lam is None and kappa is None and c is None and not tuned:
        return None
    return models.ConstantsOverride(lam=lam, kappa=kappa, c=c, tuned=tuned)


def _effective_seed(args) -> int:
    if args.seed is None:
        args.seed = secrets.randbits(63)
        if not args.json:
            print(f"seed: {args.seed} (from system entropy)", file=sys.stderr)
    return args.seed


def _emit(args, command: str, response, warnings: list[str], human_lines) -> None:
    for w in warnings:
        print(f"warning: {w}", file=sys.stderr)
    if args.json:
        doc = {"command": command, **response.model_dump(mode="json", by_alias=True)}
        if warnings:
            doc["warnings"] = warnings
        print(json.dumps(doc, indent=2))
    else:
        for line in human_lines(response):
            print(line)


def _fmt_set(vertices) -> str:
    return "{" + ", ".join(str(v) for v in vertices) + "}"


def cmd_sample(args) -> int:
    g, warnings = _read_graph(args)
    req = models.SampleRequest(
        graph=models.GraphPayload.from_graph(g),
        d=args.d,
        seed=_effective_seed(args),
        constants=_constants_override(args),
        runs=args.runs,
        include_trace=not args.no_trace,
    )
    resp = _call(args, "sample", req, models.SampleResponse)

    def render(r: models.SampleResponse):
        if r.runs == 1:
            yield f"outcome: {'success' if r.success else 'failure'}"
            if r.success:
                yield f"output ({r.output_size} vertices): {_fmt_set(r.output)}"
            yield f"path probability: {r.path_probability:.6g}"
            if r.trace is not None:
                counts = {1: 0, 2: 0, 3: 0, 4: 0}
                for step in r.trace:
                    counts[step.rule] += 1
                yield (
                    f"trace: {len(r.trace)} steps "
                    f"(edge rule {counts[1]}, greedy rule {counts[2]}, "
                    f"heavy rule {counts[3]}, finish {counts[4]})"
                )
        else:
            yield f"runs: {r.runs}  success rate: {r.success_rate:.4f}"
            for entry in (r.histogram or [])[:10]:
                label = _fmt_set(entry.vertices) if entry.vertices is not None else "failure"
                yield f"  {label}: {entry.count} ({entry.frequency:.4f})"
        yield f"seed: {r.seed}"

    _emit(args, "sample", resp, warnings, render)
    return 0


def cmd_search(args) -> int:
    g, warnings = _read_graph(args)
    budget = args.budget if args.budget == "auto" else int(args.budget)
    req = models.SearchRequest(
        graph=models.GraphPayload.from_graph(g),
        d=args.d,
        seed=_effective_seed(args),
        constants=_constants_override(args),
        budget=budget,
        workers=args.workers,
        target_size=args.target_size,
        budget_ceiling=args.budget_ceiling,
    )
    resp = _call(args, "search", req, models.SearchResponse)

    def render(r: models.SearchResponse):
        yield f"best ({r.best_size} vertices): {_fmt_set(r.best)}"
        yield f"runs: {r.runs_executed}/{r.budget}  success rate: {r.success_rate:.4f}"
        yield f"seed: {r.seed}  wall time: {r.wall_time_sec:.3f}s"

    _emit(args, "search", resp, warnings, render)
    return 0


def cmd_census(args) -> int:
    g, warnings = _read_graph(args)
    req = models.CensusRequest(
        graph=models.GraphPayload.from_graph(g),
        d=args.d,
        constants=_constants_override(args),
        cap=args.cap,
    )
    resp = _call(args, "census", req, models.CensusResponse)

    def render(r: models.CensusResponse):
        yield f"maximal d-degenerate sets: {r.count} (bound {r.bound:.6g}, within: {r.within_bound})"
        for s in r.maximal_sets:
            yield f"  {_fmt_set(s)}"

    _emit(args, "census", resp, warnings, render)
    return 0


def cmd_dist(args) -> int:
    g, warnings = _read_graph(args)
    req = models.DistRequest(
        graph=models.GraphPayload.from_graph(g),
        d=args.d,
        constants=_constants_override(args),
        cap=args.cap,
    )
    resp = _call(args, "dist", req, models.DistResponse)

    def render(r: models.DistResponse):
        yield f"outputs: {len(r.outcomes)}  failure mass: {r.failure:.6g}  total: {r.total_mass:.12f}"
        for o in r.outcomes:
            yield f"  {_fmt_set(o.vertices)}: {o.probability:.6g}"

    _emit(args, "dist", resp, warnings, render)
    return 0


def cmd_brute(args) -> int:
    g, warnings = _read_graph(args)
    req = models.BruteRequest(graph=models.GraphPayload.from_graph(g), d=args.d, cap=args.cap)
    resp = _call(args, "brute", req, models.BruteResponse)

    def render(r: models.BruteResponse):
        yield f"maximum ({r.best_size} vertices): {_fmt_set(r.best)}"

    _emit(args, "brute", resp, warnings, render)
    return 0


def cmd_constants(args) -> int:
    req = models.ConstantsRequest(d=args.d, constants=_constants_override(args))
    resp = _call(args, "constants", req, models.ConstantsResponse)

    def render(r: models.ConstantsResponse):
        rep = r.report
        yield f"d       = {rep.d}  ({rep.source})"
        yield f"lambda  = {rep.lam!r}"
        yield f"kappa   = {rep.kappa!r}"
        yield f"c       = {rep.c!r}"
        yield f"alpha   = {rep.alpha:.10g}"
        yield f"base    = {rep.base!r}  (gap below 2: {rep.base_gap:.6e})"
        yield f"gamma(r_max={rep.r_max}) = {rep.gamma_max!r}  (gap: {rep.gamma_max_gap:.6e})"

    _emit(args, "constants", resp, [], render)
    return 0


def cmd_gen(args) -> int:
    req = models.GenerateRequest(
        model=args.model,
        n=args.n,
        p=args.p,
        m=args.m,
        seed=_effective_seed(args),
    )
    resp = _call(args, "generate", req, models.GenerateResponse)
    text = serialize_graph(resp.graph.to_graph(), args.format)
    if args.json:
        doc = {"command": "gen", **resp.model_dump(mode="json"), "serialized": text}
        print(json.dumps(doc, indent=2))
    elif args.output:
        Path(args.output).write_text(text)
        print(f"wrote {args.output} (n={resp.n}, m={len(resp.graph.edges)}, seed={resp.seed})", file=sys.stderr)
    else:
        sys.stdout.write(text)
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    uvicorn.run("degenmax.service.app:app", host=args.host, port=args.port)
    return 0


def _add_common(p: argparse.ArgumentParser, with_graph: bool = True) -> None:
    p.add_argument("--d", type=int, default=1, help="degeneracy order (default 1)")
    p.add_argument("--seed", type=int, default=None, help="base seed; drawn from system entropy if absent")
    p.add_argument("--json", action="store_true", help="emit a single JSON document")
    p.add_argument("--server", default=None, help="base URL of a running degenmax service")
    p.add_argument("--lambda", dest="lam", type=float, default=None, help="override the edge-rule density factor")
    p.add_argument("--kappa", type=float, default=None, help="override the low-degree cutoff factor")
    p.add_argument("--c", type=float, default=None, help="override the heavy-vertex threshold factor")
    p.add_argument("--tune", action="store_true", help="use tuned constants even when a built-in row exists")
    if with_graph:
        p.add_argument("graph", help="graph file path, or - for stdin")
        p.add_argument("--format", choices=FORMATS, default="edgelist", help="input format (default edgelist)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="degenmax",
        description="Randomized search, sampling and exact oracles for maximum induced d-degenerate subgraphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample", help="run the sampler once (or --runs times) and summarize")
    _add_common(p)
    p.add_argument("--runs", type=int, default=1, help="number of independent runs (default 1)")
    p.add_argument("--no-trace", action="store_true", help="omit the decision trace")
    p.set_defaults(fn=cmd_sample)

    p = sub.add_parser("search", help="amplified search for a maximum set")
    _add_common(p)
    p.add_argument("--budget", default="auto", help="run count, or 'auto' for ceil(base^n)")
    p.add_argument("--workers", type=int, default=1, help="worker processes (default 1)")
    p.add_argument("--target-size", type=int, default=None, help="stop early once this size is found")
    p.add_argument("--budget-ceiling", type=int, default=None, help="refuse auto budgets above this")
    p.set_defaults(fn=cmd_search)

    p = sub.add_parser("census", help="enumerate maximal sets and check the counting bound")
    _add_common(p)
    p.add_argument("--cap", type=int, default=20, help="refuse graphs larger than this (default 20)")
    p.set_defaults(fn=cmd_census)

    p = sub.add_parser("dist", help="exact output distribution of a single run")
    _add_common(p)
    p.add_argument("--cap", type=int, default=8, help="refuse graphs larger than this (default 8)")
    p.set_defaults(fn=cmd_dist)

    p = sub.add_parser("brute", help="exhaustive maximum d-degenerate set")
    _add_common(p)
    p.add_argument("--cap", type=int, default=22, help="refuse graphs larger than this (default 22)")
    p.set_defaults(fn=cmd_brute)

    p = sub.add_parser("constants", help="report the effective constants for d")
    _add_common(p, with_graph=False)
    p.set_defaults(fn=cmd_constants)

    p = sub.add_parser("gen", help="emit a random graph file")
    p.add_argument("model", choices=["gnp", "gnm"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, default=None, help="edge probability (gnp)")
    p.add_argument("--m", type=int, default=None, help="edge count (gnm)")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--json", action="store_true")
    p.add_argument("--server", default=None)
    p.add_argument("--format", choices=FORMATS, default="edgelist")
    p.add_argument("-o", "--output", default=None, help="write to a file instead of stdout")
    p.set_defaults(fn=cmd_gen)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(fn=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except CliError as err:
        print(f"error: {err}", file=sys.stderr)
        return err.code


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
