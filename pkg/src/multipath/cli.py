"""Command line: ``multipath {gen,solve,verify,bench}``.

Exit codes: 0 success, 1 usage or I/O error, 2 infeasible instance,
3 verification failure. Vertex ids in files and JSON are 1-based; edge ids
are 0-based positions of the ``a`` lines.
"""
from __future__ import annotations

import argparse
import json
import sys
import time

from . import __version__, bench, engine, transforms
from .errors import GraphFormatError, MultipathError, NotOutconnected
from .graph import Digraph, generate_outconnected, parse_graph, write_graph
from .oracle import max_disjoint_paths, ssp_fast
from .verify import (
    Report,
    check_against_oracle,
    check_preserver,
    check_vertex_disjoint,
    decompose,
)

EXIT_OK, EXIT_USAGE, EXIT_INFEASIBLE, EXIT_VERIFY = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _read_graph(path: str, scale: int) -> tuple[Digraph, int]:
    with open(path) as fh:
        return parse_graph(fh.read(), scale)


# --------------------------------------------------------------------------
# solve

def solve(
    g: Digraph,
    s: int,
    p: int,
    mode: str = "engine",
    vertex_disjoint: bool = False,
    allow_underconnected: bool = False,
    keep_intermediate: bool = False,
    threads: int = 1,
) -> dict:
    """Run a solver and return the SolveResult document (see README)."""
    if p < 1:
        raise UsageError("--p must be positive")
    if p >= g.n and (allow_underconnected or vertex_disjoint):
        raise UsageError("--p must be smaller than the number of vertices")
    t0 = time.perf_counter()
    intermediate = None
    if mode == "engine":
        if vertex_disjoint or allow_underconnected:
            solver = transforms.solve_vertex_disjoint if vertex_disjoint else transforms.solve_general
            gs = solver(g, s, p, threads=threads)
            sigma, sols, preserver, timing = gs.sigma, gs.solutions, gs.preserver, gs.timing
        else:
            res = engine.run(g, s, p, keep_intermediate=keep_intermediate, threads=threads)
            sigma = {t: p for t in res.solutions}
            sols, preserver, timing = res.solutions, res.preserver, res.timing
            if keep_intermediate:
                intermediate = {
                    "preservers": [sorted(h) for h in res.preservers],
                    "levels": {str(t + 1): [sorted(x) for x in lv] for t, lv in res.levels.items()},
                }
        kind = "optimal"
    elif mode == "ssp-baseline":
        if vertex_disjoint:
            sg = transforms.split_vertices(g)
            og, os_, tmap = sg.graph, sg.v_out[s], (lambda t: sg.v_in[t])
        else:
            sg, og, os_, tmap = None, g, s, (lambda t: t)
        sigma, sols = {}, {}
        for t in range(g.n):
            if t == s:
                continue
            ref = ssp_fast(og, os_, tmap(t), p)
            sigma[t] = len(ref.levels)
            edges = ref.edges(sigma[t]) if sigma[t] else frozenset()
            sols[t] = transforms.map_solution_back(edges, sg) if sg else edges
        preserver = frozenset().union(*sols.values())
        timing = {}
        kind = "union-cover"
    else:
        raise UsageError(f"unknown mode {mode!r}")
    timing = dict(timing, wall_ms=(time.perf_counter() - t0) * 1e3)

    if not allow_underconnected:
        short = [t for t in sorted(sigma) if sigma[t] < p]
        if short:
            raise NotOutconnected(short[0], p)

    targets = []
    for t in sorted(sols):
        dec = decompose(g, sols[t], s, t, sigma[t]) if sigma[t] else None
        targets.append({
            "t": t + 1,
            "sigma": sigma[t],
            "total_cost": g.total_cost(sols[t]),
            "paths": [[v + 1 for v in path] for path in dec.paths] if dec else [],
            "edge_ids": sorted(sols[t]),
        })
    doc = {
        "n": g.n,
        "m": g.m,
        "source": s + 1,
        "p": p,
        "mode": mode,
        "vertex_disjoint": vertex_disjoint,
        "allow_underconnected": allow_underconnected,
        "targets": targets,
        "preserver_kind": kind,
        "preserver_edge_ids": sorted(preserver),
        "timing_ms": timing,
    }
    if intermediate is not None:
        doc["intermediate"] = intermediate
    return doc


# --------------------------------------------------------------------------
# verify

def verify(g: Digraph, s: int, doc: dict, level: str = "full") -> Report:
    """Check a SolveResult document against the graph it claims to solve."""
    report = Report()
    p = doc["p"]
    vd = bool(doc.get("vertex_disjoint"))
    header_ok = doc["n"] == g.n and doc["m"] == g.m and doc["source"] == s + 1
    report.add("header", header_ok, "" if header_ok else "n, m or source differ from the graph")
    if not header_ok:
        return report

    recs = {rec["t"] - 1: rec for rec in doc["targets"]}
    expected_targets = set(range(g.n)) - {s}
    report.add("targets", set(recs) == expected_targets,
               "" if set(recs) == expected_targets else "target list incomplete")
    if set(recs) != expected_targets:
        return report
    sols = {t: frozenset(rec["edge_ids"]) for t, rec in recs.items()}
    sigma = {t: rec["sigma"] for t, rec in recs.items()}

    bad_ids = [t for t, sol in sols.items() if any(not 0 <= e < g.m for e in sol)]
    report.add("edge_ids", not bad_ids, f"target {bad_ids[0] + 1}" if bad_ids else "")
    if bad_ids:
        return report
    bad_cost = [t for t in sorted(recs) if recs[t]["total_cost"] != g.total_cost(sols[t])]
    report.add("record_costs", not bad_cost,
               f"target {bad_cost[0] + 1}: total_cost field disagrees with its edges" if bad_cost else "")

    if vd:
        sg = transforms.split_vertices(g)
        lam = {t: max_disjoint_paths(sg.graph, sg.v_out[s], sg.v_in[t], cap=p) for t in sols}
    else:
        lam = {t: max_disjoint_paths(g, s, t, cap=p) for t in sols}
    want_sigma = {t: lam[t] if doc.get("allow_underconnected") else p for t in sols}
    wrong = [t for t in sorted(sols) if sigma[t] != want_sigma[t]]
    report.add("sigma", not wrong,
               f"target {wrong[0] + 1}: sigma {sigma[wrong[0]]}, expected {want_sigma[wrong[0]]}" if wrong else "")
    if wrong:
        return report

    report.extend(check_against_oracle(g, s, p, sols, sigma, vertex_disjoint=vd))
    if level == "costs":
        return report

    dec_fail = disjoint_fail = None
    for t in sorted(sols):
        if sigma[t] == 0:
            if sols[t]:
                dec_fail = dec_fail or f"target {t + 1}: sigma 0 with a non-empty edge set"
            continue
        try:
            dec = decompose(g, sols[t], s, t, sigma[t])
        except MultipathError as exc:
            dec_fail = dec_fail or f"target {t + 1}: {exc}"
            continue
        if [[v + 1 for v in path] for path in dec.paths] != recs[t]["paths"]:
            dec_fail = dec_fail or f"target {t + 1}: reported paths differ from the decomposition"
        if vd and not check_vertex_disjoint(dec):
            disjoint_fail = disjoint_fail or f"target {t + 1}: paths share an internal vertex"
    report.add("decomposition", dec_fail is None, dec_fail or "")
    if vd:
        report.add("vertex_disjoint", disjoint_fail is None, disjoint_fail or "")

    if doc.get("preserver_kind") == "optimal":
        preserver = frozenset(doc["preserver_edge_ids"])
        report.extend(check_preserver(g, s, p, preserver, sols, sigma, vertex_disjoint=vd))
    else:
        report.notices.append("preserver checks skipped: baseline output carries only a union cover")
    return report


# --------------------------------------------------------------------------
# commands

def cmd_gen(args) -> int:
    if args.n < 2 or not 1 <= args.p_connected <= args.n - 1:
        raise UsageError("need --n >= 2 and 1 <= --p-connected <= n-1")
    if args.extra_edges < 0 or args.max_cost < 0:
        raise UsageError("--extra-edges and --max-cost must be non-negative")
    g = generate_outconnected(args.n, args.p_connected, args.extra_edges, args.max_cost, args.seed)
    comment = (f"generated n={args.n} p={args.p_connected} extra={args.extra_edges} "
               f"max_cost={args.max_cost} seed={args.seed}")
    _emit(write_graph(g, 0, comment), args.out)
    return EXIT_OK


def cmd_solve(args) -> int:
    g, s = _read_graph(args.input, args.cost_scale)
    doc = solve(g, s, args.p, args.mode, args.vertex_disjoint, args.allow_underconnected,
                args.keep_intermediate, args.threads)
    _emit(json.dumps(doc, indent=2) + "\n", args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    g, s = _read_graph(args.input, args.cost_scale)
    with open(args.solution) as fh:
        doc = json.load(fh)
    try:
        report = verify(g, s, doc, args.level)
    except (KeyError, TypeError) as exc:
        raise UsageError(f"malformed solution document: {exc}") from None
    _emit(json.dumps(report.to_dict(), indent=2) + "\n", args.out)
    for note in report.notices:
        print(f"notice: {note}", file=sys.stderr)
    for item in report.failures():
        print(f"FAILED {item.name}: {item.detail}", file=sys.stderr)
    return EXIT_OK if report.ok else EXIT_VERIFY


def cmd_bench(args) -> int:
    try:
        n_list = [int(x) for x in args.n_list.split(",") if x.strip()]
    except ValueError:
        raise UsageError("--n-list must be comma-separated integers") from None
    if not n_list or min(n_list) < 2 or args.p < 1 or args.p >= min(n_list) or args.reps < 1:
        raise UsageError("need n >= 2, 1 <= p < n and --reps >= 1")
    rows = bench.run_bench(n_list, args.p, args.density, args.seed, args.reps)
    _emit(bench.rows_to_csv(rows), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="multipath", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    gen = sub.add_parser("gen", help="write a random p-edge-outconnected graph")
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--p-connected", type=int, required=True)
    gen.add_argument("--extra-edges", type=int, default=0)
    gen.add_argument("--max-cost", type=int, default=100)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out")
    gen.set_defaults(func=cmd_gen)

    sol = sub.add_parser("solve", help="shortest p edge-disjoint paths to every vertex")
    sol.add_argument("--input", required=True)
    sol.add_argument("--p", type=int, required=True)
    sol.add_argument("--mode", choices=["engine", "ssp-baseline"], default="engine")
    sol.add_argument("--vertex-disjoint", action="store_true")
    sol.add_argument("--allow-underconnected", action="store_true")
    sol.add_argument("--keep-intermediate", action="store_true")
    sol.add_argument("--threads", type=int, default=1)
    sol.add_argument("--cost-scale", type=int, default=0,
                     help="multiply costs by 10^k when reading (for decimal costs)")
    sol.add_argument("--out")
    sol.set_defaults(func=cmd_solve)

    ver = sub.add_parser("verify", help="check a solve result")
    ver.add_argument("--input", required=True)
    ver.add_argument("--solution", required=True)
    ver.add_argument("--level", choices=["costs", "full"], default="full")
    ver.add_argument("--cost-scale", type=int, default=0)
    ver.add_argument("--out")
    ver.set_defaults(func=cmd_verify)

    ben = sub.add_parser("bench", help="time the engine against per-target SSP")
    ben.add_argument("--n-list", required=True)
    ben.add_argument("--p", type=int, default=3)
    ben.add_argument("--density", choices=["sparse", "dense"], default="dense")
    ben.add_argument("--seed", type=int, default=0)
    ben.add_argument("--reps", type=int, default=3)
    ben.add_argument("--out")
    ben.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # --help, --version and usage errors
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except NotOutconnected as exc:
        print(f"error: NotOutconnected: vertex {exc.vertex + 1} has fewer than "
              f"{exc.phase} edge-disjoint paths from the source", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (UsageError, GraphFormatError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
