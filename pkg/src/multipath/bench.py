"""Engine versus one SSP run per target, on generated instances."""
from __future__ import annotations

import csv
import io
import statistics
import time

from . import engine
from .graph import Digraph, generate_outconnected
from .oracle import ssp_fast

CSV_HEADER = ["n", "m", "p", "engine_ms", "baseline_ms", "ratio"]


def bench_graph(n: int, p: int, density: str, seed: int, max_cost: int = 100) -> Digraph:
    if density == "dense":
        extra = max(0, n * (n - 1) // 2 - p * (n - 1))
    elif density == "sparse":
        extra = 3 * n
    else:
        raise ValueError(f"unknown density {density!r}")
    return generate_outconnected(n, p, extra, max_cost, seed)


def baseline(g: Digraph, s: int, p: int) -> dict[int, int]:
    return {t: ssp_fast(g, s, t, p).cost(p) for t in range(g.n) if t != s}


def _timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return (time.perf_counter() - t0) * 1e3, out


def run_bench(n_list, p: int, density: str = "dense", seed: int = 0, reps: int = 3) -> list[dict]:
    """One row per n with median wall-clock times over ``reps`` runs.

    A warm-up run precedes the timed ones and is discarded.
    """
    rows = []
    for n in n_list:
        g = bench_graph(n, p, density, seed + n)
        eng, base = [], []
        for rep in range(reps + 1):
            te, res = _timed(lambda: engine.run(g, 0, p))
            tb, ref = _timed(lambda: baseline(g, 0, p))
            if res.costs != ref:
                raise RuntimeError(f"engine and baseline disagree on n={n}")
            if rep:
                eng.append(te)
                base.append(tb)
        e_ms, b_ms = statistics.median(eng), statistics.median(base)
        rows.append(
            {"n": n, "m": g.m, "p": p, "engine_ms": round(e_ms, 3),
             "baseline_ms": round(b_ms, 3), "ratio": round(e_ms / b_ms, 6)}
        )
    return rows


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_HEADER, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()
