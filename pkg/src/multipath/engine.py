"""Phase-based computation of shortest p edge-disjoint paths to every vertex
together with a p-multipath preserver of size p(n-1).

Phase 1 is a shortest-path tree. Every later phase builds, for each target
t, a sparse residual subgraph (preserver edges with t's current solution
reversed, plus all other edges entering t), reweights it with potentials so
that Dijkstra applies, and grows a reverse shortest-path tree towards t.
A global Dijkstra-like loop then composes the augmenting path of t from the
already-finished path of some hub q and the tree path q -> t, adding the
last edge of each augmenting path to the preserver.

Distances are lexicographic pairs (cost, hops) where hops counts forward
edges outside the previous preserver.
"""
from __future__ import annotations

import heapq
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import InternalInvariant, NegativeReducedCost, NotOutconnected, UnreachableVertex
from .graph import TOP, Digraph, LexCost, OrientedEdge
from .oracle import apply_augmenting_path


@dataclass
class TargetTree:
    """Reverse shortest-path tree towards ``target`` with true (cost, hops) distances."""

    target: int
    member: list[bool]
    parent_edge: list[OrientedEdge | None]
    next_vertex: list[int]
    dist_cost: list[int]
    dist_hops: list[int]

    def dist(self, v: int) -> LexCost:
        if not self.member[v]:
            return TOP
        return LexCost(self.dist_cost[v], self.dist_hops[v])

    def path_from(self, v: int) -> list[OrientedEdge]:
        """Oriented tree path from ``v`` to the target."""
        if not self.member[v]:
            raise KeyError(f"vertex {v} is not in the tree of {self.target}")
        path = []
        while v != self.target:
            path.append(self.parent_edge[v])
            v = self.next_vertex[v]
        return path


@dataclass
class PhaseState:
    """Engine state after ``phase`` phases.

    ``solution[t]`` is the current i-path solution, ``prev_solution[t]`` the
    one before it, and ``potentials[t]`` the reweighting table that makes the
    residual graph of ``prev_solution[t]`` non-negative (None means all zero).
    """

    phase: int
    source: int
    preserver: frozenset
    solution: list[frozenset]
    prev_solution: list[frozenset]
    potentials: list[list[int] | None]


@dataclass
class EngineResult:
    n: int
    source: int
    p: int
    preserver: frozenset
    solutions: dict[int, frozenset]
    costs: dict[int, int]
    preservers: list[frozenset] | None = None
    levels: dict[int, list[frozenset]] | None = None
    timing: dict = field(default_factory=dict)


# --------------------------------------------------------------------------
# phase 1

def init_phase1(g: Digraph, s: int) -> PhaseState:
    """Shortest-path tree from ``s`` (ties: fewer edges, then smaller vertex)."""
    n = g.n
    key: list = [None] * n
    parent = [-1] * n
    done = bytearray(n)
    key[s] = (0, 0)
    heap = [(0, 0, s)]
    while heap:
        c, h, u = heapq.heappop(heap)
        if done[u]:
            continue
        done[u] = 1
        for e in g.out_index[u]:
            v = g.heads[e]
            if done[v]:
                continue
            nk = (c + g.costs[e], h + 1)
            if key[v] is None or nk < key[v]:
                key[v] = nk
                parent[v] = e
                heapq.heappush(heap, (nk[0], nk[1], v))
    for v in range(n):
        if key[v] is None:
            raise UnreachableVertex(v)
    solution: list = [frozenset()] * n
    for v in _bfs_order(g, parent, s):
        if v != s:
            e = parent[v]
            solution[v] = solution[g.tails[e]] | {e}
    preserver = frozenset(parent[v] for v in range(n) if v != s)
    return PhaseState(1, s, preserver, solution, [frozenset()] * n, [None] * n)


def _bfs_order(g, parent, s):
    children = [[] for _ in range(g.n)]
    for v, e in enumerate(parent):
        if e >= 0:
            children[g.tails[e]].append(v)
    order = [s]
    for u in order:
        order.extend(children[u])
    return order


# --------------------------------------------------------------------------
# per-target preparation

def build_target_subgraph(state: PhaseState, g: Digraph, t: int) -> list[OrientedEdge]:
    """Preserver edges with t's solution reversed, plus every other edge entering t."""
    sol = state.solution[t]
    arcs = [OrientedEdge(e, e not in sol) for e in sorted(state.preserver | sol)]
    arcs.extend(
        OrientedEdge(e, True)
        for e in g.in_index[t]
        if e not in sol and e not in state.preserver
    )
    return arcs


def update_potentials(state: PhaseState, g: Digraph, t: int) -> list[int]:
    """New reweighting table for target t.

    Runs Dijkstra from the source over the preserver with t's previous
    solution reversed, using costs reduced by the previous table, and adds
    the resulting distances to that table. Vertices the search cannot reach
    get one more than the largest finite distance.
    """
    n, s = g.n, state.source
    old_sol = state.prev_solution[t]
    prev = state.potentials[t] or [0] * n
    adj: list[list] = [[] for _ in range(n)]
    for e in state.preserver:
        u, v, c = g.tails[e], g.heads[e], g.costs[e]
        if e in old_sol:
            u, v, c = v, u, -c
        rc = c + prev[u] - prev[v]
        if rc < 0:
            raise NegativeReducedCost(u, v, rc)
        adj[u].append((v, rc))
    dist: list = [None] * n
    dist[s] = 0
    heap = [(0, s)]
    done = bytearray(n)
    while heap:
        d, u = heapq.heappop(heap)
        if done[u]:
            continue
        done[u] = 1
        for v, rc in adj[u]:
            nd = d + rc
            if dist[v] is None or nd < dist[v]:
                dist[v] = nd
                heapq.heappush(heap, (nd, v))
    fill = max(x for x in dist if x is not None) + 1
    return [prev[v] + (fill if dist[v] is None else dist[v]) for v in range(n)]


def reverse_spt(
    g: Digraph,
    arcs: Sequence[OrientedEdge],
    pot: Sequence[int],
    preserver: frozenset,
    t: int,
) -> TargetTree:
    """Lexicographic reverse shortest-path tree towards ``t`` over ``arcs``.

    Dijkstra runs on reduced costs; the stored distances are converted back
    to true costs.
    """
    n = g.n
    radj: list[list] = [[] for _ in range(n)]
    for oe in arcs:
        e, fwd = oe
        if fwd:
            x, y, c = g.tails[e], g.heads[e], g.costs[e]
            hop = 0 if e in preserver else 1
        else:
            x, y, c = g.heads[e], g.tails[e], -g.costs[e]
            hop = 0
        rc = c + pot[x] - pot[y]
        if rc < 0:
            raise NegativeReducedCost(x, y, rc)
        radj[y].append((x, oe, rc, hop))
    rkey: list = [None] * n
    parent: list = [None] * n
    nxt = [-1] * n
    done = bytearray(n)
    rkey[t] = (0, 0)
    heap = [(0, 0, t)]
    while heap:
        rc_y, h_y, y = heapq.heappop(heap)
        if done[y]:
            continue
        done[y] = 1
        for x, oe, rc, hop in radj[y]:
            if done[x]:
                continue
            nk = (rc_y + rc, h_y + hop)
            if rkey[x] is None or nk < rkey[x]:
                rkey[x] = nk
                parent[x] = oe
                nxt[x] = y
                heapq.heappush(heap, (nk[0], nk[1], x))
    member = [k is not None for k in rkey]
    pt = pot[t]
    dist_cost = [0] * n
    dist_hops = [0] * n
    for v in range(n):
        if member[v]:
            c = rkey[v][0] - pot[v] + pt
            if c < 0:
                raise InternalInvariant(f"tree towards {t} has negative distance {c} at {v}")
            dist_cost[v] = c
            dist_hops[v] = rkey[v][1]
    return TargetTree(t, member, parent, nxt, dist_cost, dist_hops)


def prepare_target(state: PhaseState, g: Digraph, t: int) -> tuple[list[int], TargetTree]:
    arcs = build_target_subgraph(state, g, t)
    pot = update_potentials(state, g, t)
    return pot, reverse_spt(g, arcs, pot, state.preserver, t)


# --------------------------------------------------------------------------
# main loop

def _dtype_for(g: Digraph):
    # every value in the main-loop arrays is bounded by a small multiple of c(E)
    return np.int64 if 8 * (g.total_cost() + 1) * (g.n + 1) < 2**62 else object


def run_phase(
    state: PhaseState,
    g: Digraph,
    s: int | None = None,
    threads: int = 1,
    trace: list | None = None,
    timing: dict | None = None,
) -> PhaseState:
    """Advance ``state`` by one phase.

    ``trace``, when given, receives ``(q, d(q), pi_q)`` for every extraction
    in order.
    """
    s = state.source if s is None else s
    if s != state.source:
        raise ValueError("source does not match the phase state")
    n = g.n
    phase = state.phase + 1
    targets = [t for t in range(n) if t != s]

    t0 = time.perf_counter()
    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            prepared = list(pool.map(lambda t: prepare_target(state, g, t), targets))
    else:
        prepared = [prepare_target(state, g, t) for t in targets]
    t1 = time.perf_counter()

    dtype = _dtype_for(g)
    inf = np.iinfo(np.int64).max if dtype is np.int64 else 1 << 256
    # tree distances indexed [vertex, target] so a hub's relaxations read one row
    tree_cost = np.zeros((n, n), dtype=dtype)
    tree_hops = np.zeros((n, n), dtype=dtype)
    tree_member = np.zeros((n, n), dtype=bool)
    trees: list[TargetTree | None] = [None] * n
    potentials: list = [None] * n
    for t, (pot, tree) in zip(targets, prepared):
        trees[t] = tree
        potentials[t] = pot
        tree_member[:, t] = tree.member
        tree_cost[:, t] = tree.dist_cost
        tree_hops[:, t] = tree.dist_hops

    d_cost = np.full(n, inf, dtype=dtype)
    d_hops = np.full(n, inf, dtype=dtype)
    d_cost[s] = 0
    d_hops[s] = 0
    queued = np.ones(n, dtype=bool)
    rho = np.full(n, -1, dtype=np.int64)
    paths: list[list[OrientedEdge] | None] = [None] * n
    paths[s] = []

    old_preserver = state.preserver
    preserver = set(old_preserver)
    solution = list(state.solution)
    last_key = (-inf, -inf)

    for _ in range(n):
        masked = np.where(queued, d_cost, inf)
        q = int(np.argmin(masked))
        best = masked[q]
        if best == inf:
            raise NotOutconnected(int(np.flatnonzero(queued)[0]), phase)
        ties = np.flatnonzero(masked == best)
        if len(ties) > 1:
            q = int(ties[np.argmin(d_hops[ties])])
        queued[q] = False
        key = (int(d_cost[q]), int(d_hops[q]))
        if key < last_key:
            raise InternalInvariant(f"extraction order decreased at {q}: {key} < {last_key}")
        last_key = key

        if q != s:
            hub = int(rho[q])
            pi = paths[hub] + trees[q].path_from(hub)
            paths[q] = pi
            last = pi[-1]
            if not last.forward or g.heads[last.edge] != q:
                raise InternalInvariant(f"augmenting path of {q} does not end with an edge into it")
            if last.edge in old_preserver:
                raise InternalInvariant(f"edge {last.edge} entering {q} is already preserved")
            preserver.add(last.edge)
            solution[q] = _drop_cycles(g, s, q, apply_augmenting_path(state.solution[q], pi))
            if trace is not None:
                trace.append((q, LexCost(*key), pi))

        row = tree_member[q] & queued
        if row.any():
            cand_c = d_cost[q] + tree_cost[q]
            cand_h = d_hops[q] + tree_hops[q]
            better = row & ((cand_c < d_cost) | ((cand_c == d_cost) & (cand_h < d_hops)))
            d_cost[better] = cand_c[better]
            d_hops[better] = cand_h[better]
            rho[better] = q
    t2 = time.perf_counter()

    new_preserver = frozenset(preserver)
    _check_phase(g, s, phase, new_preserver, solution)
    if timing is not None:
        timing.setdefault("prep_ms", 0.0)
        timing.setdefault("main_loop_ms", 0.0)
        timing.setdefault("phases_ms", [])
        timing["prep_ms"] += (t1 - t0) * 1e3
        timing["main_loop_ms"] += (t2 - t1) * 1e3
        timing["phases_ms"].append((t2 - t0) * 1e3)
    return PhaseState(phase, s, new_preserver, solution, list(state.solution), potentials)


def _drop_cycles(g: Digraph, s: int, t: int, edges: frozenset) -> frozenset:
    """Keep only the edges of the s->t paths in ``edges``.

    Pushing flow along an augmenting path can close a zero-cost cycle next
    to the paths. Such a cycle never touches t (no solution edge leaves t)
    and its edges stay in the preserver, so dropping it changes neither the
    cost nor the invariants.
    """
    out: dict[int, list[int]] = {}
    for e in sorted(edges, reverse=True):
        out.setdefault(g.tails[e], []).append(e)
    kept: set[int] = set()
    while out.get(s):
        walk: list[int] = []
        seen = {s: 0}
        v = s
        while v != t:
            e = out[v].pop()
            walk.append(e)
            v = g.heads[e]
            if v in seen:
                # splice out the loop just closed
                del walk[seen[v]:]
                for u in [w for w, k in seen.items() if k > seen[v]]:
                    del seen[u]
            else:
                seen[v] = len(walk)
        kept.update(walk)
    if len(kept) == len(edges):
        return edges
    if g.total_cost(edges) != g.total_cost(kept):
        raise InternalInvariant(f"solution of {t} contained a cycle of positive cost")
    return frozenset(kept)


def _check_phase(g, s, phase, preserver, solution):
    if len(preserver) != phase * (g.n - 1):
        raise InternalInvariant(f"preserver has {len(preserver)} edges after phase {phase}")
    deg = g.in_degree(preserver)
    for v in range(g.n):
        want = 0 if v == s else phase
        if deg[v] != want:
            raise InternalInvariant(f"in-degree of {v} is {deg[v]}, expected {want}")
        if not solution[v] <= preserver:
            raise InternalInvariant(f"solution of {v} leaves the preserver")


def run(
    g: Digraph,
    s: int,
    p: int,
    keep_intermediate: bool = False,
    threads: int = 1,
) -> EngineResult:
    """Solve for all targets at once.

    Raises NotOutconnected if some vertex lacks p edge-disjoint paths from
    ``s``; see :mod:`multipath.transforms` for graphs that are not
    p-edge-outconnected.
    """
    if p < 1:
        raise ValueError("p must be positive")
    if not 0 <= s < g.n:
        raise ValueError(f"source {s} out of range")
    timing: dict = {}
    t0 = time.perf_counter()
    state = init_phase1(g, s)
    timing["phase1_ms"] = (time.perf_counter() - t0) * 1e3
    preservers = [state.preserver] if keep_intermediate else None
    levels = {t: [state.solution[t]] for t in range(g.n) if t != s} if keep_intermediate else None
    for _ in range(p - 1):
        state = run_phase(state, g, s, threads=threads, timing=timing)
        if keep_intermediate:
            preservers.append(state.preserver)
            for t in levels:
                levels[t].append(state.solution[t])
    timing["total_ms"] = (time.perf_counter() - t0) * 1e3
    solutions = {t: state.solution[t] for t in range(g.n) if t != s}
    return EngineResult(
        n=g.n,
        source=s,
        p=p,
        preserver=state.preserver,
        solutions=solutions,
        costs={t: g.total_cost(sol) for t, sol in solutions.items()},
        preservers=preservers,
        levels=levels,
        timing=timing,
    )
