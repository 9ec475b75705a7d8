"""Command-line entry point. JSON goes to stdout, logs to stderr."""

from __future__ import annotations

import argparse
import json
import logging
import os
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from . import exact, generators
from .graph import Graph, GraphError, read_graph, subdivide, write_edge_list, write_graph6
from .packing import ColoringError, PackingSequence, SColoring, lift, verify, weakening_implies
from .partition import EngineDiagnostic, json_sink
from .pipeline import solve

log = logging.getLogger("packcolor")

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_DIAGNOSTIC = 2
EXIT_USAGE = 3


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _load_graph(path: str) -> Graph:
    return read_graph(_read_text(path))


def _load_coloring(path: str, n: int) -> SColoring:
    return SColoring.loads(_read_text(path), n)


def _format_graph(g: Graph, fmt: str) -> str:
    if fmt == "graph6" or (fmt == "auto" and g.n < 63):
        return write_graph6(g) + "\n"
    return write_edge_list(g)


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj) + "\n")


def cmd_gen(args) -> int:
    kind = args.kind
    if kind == "petersen":
        g = generators.petersen()
    elif kind == "k4":
        g = generators.k4()
    elif kind in ("cycle", "prism", "random-cubic"):
        if args.n is None:
            raise ValueError(f"gen {kind} needs N")
        if kind == "cycle":
            g = generators.cycle(args.n)
        elif kind == "prism":
            g = generators.prism(args.n)
        else:
            g = generators.random_cubic(args.n, args.seed)
    else:
        raise ValueError(f"unknown graph kind {kind!r}")
    sys.stdout.write(_format_graph(g, args.format))
    return EXIT_OK


def _trace_sink(args):
    if getattr(args, "trace", None):
        fh = open(args.trace, "w")
        return json_sink(fh), fh
    if os.environ.get("PACKING_TRACE") == "1":
        return json_sink(sys.stderr), None
    return None, None


def cmd_color(args) -> int:
    g = _load_graph(args.file)
    sink, fh = _trace_sink(args)
    try:
        res = solve(g, sink=sink)
    except EngineDiagnostic as exc:
        _emit({"status": "DIAGNOSTIC", **exc.to_json()})
        return EXIT_DIAGNOSTIC
    finally:
        if fh is not None:
            fh.close()
    # independent re-check before anything is printed as a success
    report = verify(g, res.coloring)
    if not report.valid:
        _emit({"status": "DIAGNOSTIC", "diagnostic": "final verification failed", **report.to_json()})
        return EXIT_DIAGNOSTIC
    log.info("colored n=%d host_n=%d moves=%d", g.n, res.stats.host_n, res.stats.moves)
    _emit(res.coloring.to_json())
    return EXIT_OK


def cmd_verify(args) -> int:
    g = _load_graph(args.file)
    f = _load_coloring(args.coloring, g.n)
    report = verify(g, f)
    _emit(report.to_json())
    return EXIT_OK if report.valid else EXIT_FAIL


def _timed(obj: dict, args, *keys: str) -> dict:
    if args.no_timing:
        for k in keys:
            obj.pop(k, None)
    return obj


def cmd_exact(args) -> int:
    g = _load_graph(args.file)
    res = exact.solve(g, PackingSequence.parse(args.seq), args.time_cap)
    _emit(_timed(res.to_json(), args, "elapsed_ms"))
    return EXIT_OK


def cmd_subdivide(args) -> int:
    g = _load_graph(args.file)
    sys.stdout.write(_format_graph(subdivide(g).graph, args.format))
    return EXIT_OK


def cmd_lift(args) -> int:
    g = _load_graph(args.file)
    f = _load_coloring(args.coloring, g.n)
    sub = subdivide(g)
    lifted = lift(g, f, sub)
    report = verify(sub.graph, lifted)
    target = PackingSequence(range(1, len(lifted.seq) + 1))
    implies = weakening_implies(lifted.seq, target)
    _emit({
        "coloring": lifted.to_json(),
        "valid": report.valid,
        "weakening": {"target": list(target.s), "implies": implies},
    })
    return EXIT_OK if report.valid else EXIT_FAIL


def cmd_chi_p(args) -> int:
    g = _load_graph(args.file)
    k = exact.chi_p(g, args.max, args.time_cap)
    _emit({"chi_p": k if k is not None else "UNKNOWN"})
    return EXIT_OK


def cmd_max2is(args) -> int:
    g = _load_graph(args.file)
    size, i1, i2 = exact.max_two_disjoint_independent(g)
    _emit({"size": size, "I1": i1, "I2": i2})
    return EXIT_OK


def _stress_one(job: tuple[int, int, int]) -> dict:
    idx, n, seed = job
    g = generators.random_cubic(n, seed)
    t0 = time.perf_counter()
    try:
        res = solve(g)
    except EngineDiagnostic as exc:
        return {"index": idx, "n": n, "seed": seed, "status": "DIAGNOSTIC", "diagnostic": str(exc),
                "ms": (time.perf_counter() - t0) * 1000.0}
    ok = verify(g, res.coloring).valid
    return {"index": idx, "n": n, "seed": seed, "status": "SOLVED" if ok else "INVALID",
            "moves": res.stats.moves, "conflicts": res.stats.conflicts_repaired,
            "ms": (time.perf_counter() - t0) * 1000.0}


def stress_jobs(count: int, min_n: int, max_n: int, seed: int) -> list[tuple[int, int, int]]:
    lo = max(4, min_n + (min_n % 2))
    hi = max_n - (max_n % 2)
    if hi < lo:
        raise ValueError(f"no even n in [{min_n}, {max_n}] with n >= 4")
    rng = random.Random(seed)
    return [(i, rng.randrange(lo, hi + 1, 2), rng.getrandbits(32)) for i in range(count)]


def run_stress(count: int, min_n: int, max_n: int, seed: int, jobs: int = 1) -> dict:
    t0 = time.perf_counter()
    work = stress_jobs(count, min_n, max_n, seed)
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            results = list(pool.map(_stress_one, work, chunksize=4))
    else:
        results = [_stress_one(j) for j in work]
    solved = sum(1 for r in results if r["status"] == "SOLVED")
    summary = {
        "solved": solved,
        "failed": len(results) - solved,
        "max_moves": max((r.get("moves", 0) for r in results), default=0),
        "wall_ms": round((time.perf_counter() - t0) * 1000.0, 3),
    }
    return {"results": results, "summary": summary}


def cmd_stress(args) -> int:
    out = run_stress(args.count, args.min_n, args.max_n, args.seed, args.jobs)
    if args.no_timing:
        out["summary"].pop("wall_ms")
        for r in out["results"]:
            r.pop("ms", None)
    else:
        for r in out["results"]:
            r["ms"] = round(r["ms"], 3)
    _emit(out)
    log.info("stress: %s", out["summary"])
    return EXIT_OK if out["summary"]["failed"] == 0 else EXIT_FAIL


class _Parser(argparse.ArgumentParser):
    """Usage errors exit with EXIT_USAGE so they never look like a diagnostic."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="packcolor", description="Packing (1,1,2,2,3)-colorings of subcubic graphs.")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    p.add_argument("--no-timing", action="store_true", help="omit wall-clock fields so output is reproducible")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("gen", help="print a graph")
    s.add_argument("kind", choices=["petersen", "k4", "cycle", "prism", "random-cubic"])
    s.add_argument("n", nargs="?", type=int)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--format", choices=["auto", "graph6", "edges"], default="auto")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("color", help="packing (1,1,2,2,3)-color a subcubic graph")
    s.add_argument("file")
    s.add_argument("--trace", help="write one JSON line per committed move")
    s.set_defaults(func=cmd_color)

    s = sub.add_parser("verify", help="check a coloring")
    s.add_argument("file")
    s.add_argument("--coloring", required=True)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("exact", help="exact packing S-colorability search")
    s.add_argument("file")
    s.add_argument("--seq", required=True, help="comma-separated sequence, e.g. 1,1,2,2")
    s.add_argument("--time-cap", type=float, default=None)
    s.set_defaults(func=cmd_exact)

    s = sub.add_parser("subdivide", help="print the 1-subdivision")
    s.add_argument("file")
    s.add_argument("--format", choices=["auto", "graph6", "edges"], default="auto")
    s.set_defaults(func=cmd_subdivide)

    s = sub.add_parser("lift", help="lift a coloring to the 1-subdivision")
    s.add_argument("file")
    s.add_argument("--coloring", required=True)
    s.set_defaults(func=cmd_lift)

    s = sub.add_parser("chi-p", help="packing chromatic number by exact search")
    s.add_argument("file")
    s.add_argument("--max", type=int, default=12)
    s.add_argument("--time-cap", type=float, default=None)
    s.set_defaults(func=cmd_chi_p)

    s = sub.add_parser("max2is", help="maximum union of two disjoint independent sets")
    s.add_argument("file")
    s.set_defaults(func=cmd_max2is)

    s = sub.add_parser("stress", help="color random cubic graphs and verify every result")
    s.add_argument("--count", type=int, default=100)
    s.add_argument("--min-n", type=int, default=8)
    s.add_argument("--max-n", type=int, default=120)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_stress)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (GraphError, ColoringError, ValueError, OSError) as exc:
        print(f"packcolor: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
