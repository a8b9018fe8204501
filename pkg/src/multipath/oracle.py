"""Reference solvers used as ground truth for the engine.

Everything here works one target at a time and is deliberately simple:
successive shortest paths with Bellman-Ford or with Dijkstra over reduced
costs, exhaustive enumeration for tiny graphs, and unit-capacity max-flow.
"""
from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

from .errors import InstanceTooLarge, InternalInvariant, NegativeReducedCost
from .graph import Digraph, OrientedEdge


class Level(NamedTuple):
    edges: frozenset
    cost: int


@dataclass
class FlowSolution:
    """Optimal edge sets for 1..k units of flow from the source to ``target``.

    ``levels[i - 1]`` holds the i-path solution. ``complete`` is False when
    the target ran out of augmenting paths before the requested count.
    """

    target: int
    requested: int
    levels: list[Level] = field(default_factory=list)

    @property
    def complete(self) -> bool:
        return len(self.levels) == self.requested

    def cost(self, i: int) -> int:
        return self.levels[i - 1].cost

    def edges(self, i: int) -> frozenset:
        return self.levels[i - 1].edges

    def marginals(self) -> list[int]:
        prev, out = 0, []
        for lv in self.levels:
            out.append(lv.cost - prev)
            prev = lv.cost
        return out


def apply_augmenting_path(prev: frozenset, path: Sequence[OrientedEdge]) -> frozenset:
    """Push one unit along ``path``: drop the edges it traverses backwards and
    add the ones it traverses forwards."""
    drop, add = set(), set()
    for edge, forward in path:
        if forward:
            if edge in prev or edge in add:
                raise InternalInvariant(f"forward edge {edge} already carries flow")
            add.add(edge)
        else:
            if edge not in prev or edge in drop:
                raise InternalInvariant(f"reversed edge {edge} carries no flow")
            drop.add(edge)
    return (prev - drop) | add


def residual_arcs(g: Digraph, flow: frozenset):
    """(tail, head, cost, OrientedEdge) for every arc of the unit residual graph."""
    for e in range(g.m):
        if e in flow:
            yield g.heads[e], g.tails[e], -g.costs[e], OrientedEdge(e, False)
        else:
            yield g.tails[e], g.heads[e], g.costs[e], OrientedEdge(e, True)


def _walk_back(parent, s, t):
    path = []
    v = t
    while v != s:
        arc = parent[v]
        path.append(arc[1])
        v = arc[0]
        if len(path) > len(parent):
            raise InternalInvariant("predecessor pointers contain a cycle")
    path.reverse()
    return path


def _bellman_ford_path(g: Digraph, flow: frozenset, s: int, t: int):
    # keys are (cost, forward arcs); see ssp_fast for why forward arcs break ties
    arcs = [(u, v, (c, 1 if oe.forward else 0), oe) for u, v, c, oe in residual_arcs(g, flow)]
    dist: list = [None] * g.n
    parent: list = [None] * g.n
    dist[s] = (0, 0)
    for _ in range(g.n - 1):
        changed = False
        for u, v, (c, h), oe in arcs:
            du = dist[u]
            if du is None:
                continue
            nd = (du[0] + c, du[1] + h)
            if dist[v] is None or nd < dist[v]:
                dist[v] = nd
                parent[v] = (u, oe)
                changed = True
        if not changed:
            break
    else:
        for u, v, (c, h), _ in arcs:
            if dist[u] is not None and (dist[u][0] + c, dist[u][1] + h) < dist[v]:
                raise InternalInvariant("negative cycle in a min-cost residual graph")
    if dist[t] is None:
        return None
    return _walk_back(parent, s, t)


def ssp_reference(g: Digraph, s: int, t: int, p: int) -> FlowSolution:
    """Successive shortest paths with Bellman-Ford on the residual graph.

    Equal-cost paths are ranked by their number of forward arcs, as in
    :func:`ssp_fast`.
    """
    if p < 1:
        raise ValueError("p must be positive")
    sol = FlowSolution(t, p)
    flow: frozenset = frozenset()
    for _ in range(p):
        path = _bellman_ford_path(g, flow, s, t)
        if path is None:
            break
        flow = apply_augmenting_path(flow, path)
        sol.levels.append(Level(flow, g.total_cost(flow)))
    return sol


def ssp_fast(g: Digraph, s: int, t: int, p: int) -> FlowSolution:
    """Successive shortest paths with Dijkstra on potential-reduced costs.

    The potentials are the accumulated distances of earlier rounds, which
    keep every residual arc between reachable vertices non-negative.
    Vertices unreachable in one round stay unreachable afterwards, so their
    stale potentials are never read.

    Among paths of equal cost the one with fewest forward arcs wins. That
    keeps every level acyclic: a cycle in the new edge set must use a
    forward arc of the path, and cancelling it would give an equally cheap
    path with fewer forward arcs.
    """
    if p < 1:
        raise ValueError("p must be positive")
    n = g.n
    tails, heads, costs = g.tails, g.heads, g.costs
    out_index, in_index = g.out_index, g.in_index
    pot = [0] * n
    inflow = bytearray(g.m)
    sol = FlowSolution(t, p)
    flow: set[int] = set()
    total = 0
    for _ in range(p):
        dist: list = [None] * n
        parent: list = [None] * n
        done = bytearray(n)
        dist[s] = (0, 0)
        heap = [(0, 0, s)]
        while heap:
            d, h, u = heapq.heappop(heap)
            if done[u]:
                continue
            done[u] = 1
            pu = pot[u]
            for e in out_index[u]:
                if inflow[e]:
                    continue
                v = heads[e]
                if done[v]:
                    continue
                nd = d + costs[e] + pu - pot[v]
                if nd < d:
                    raise NegativeReducedCost(u, v, nd - d)
                key = (nd, h + 1)
                if dist[v] is None or key < dist[v]:
                    dist[v] = key
                    parent[v] = (u, e, True)
                    heapq.heappush(heap, (nd, h + 1, v))
            for e in in_index[u]:
                if not inflow[e]:
                    continue
                v = tails[e]
                if done[v]:
                    continue
                nd = d - costs[e] + pu - pot[v]
                if nd < d:
                    raise NegativeReducedCost(u, v, nd - d)
                key = (nd, h)
                if dist[v] is None or key < dist[v]:
                    dist[v] = key
                    parent[v] = (u, e, False)
                    heapq.heappush(heap, (nd, h, v))
        if dist[t] is None:
            break
        true_len = dist[t][0] - pot[s] + pot[t]
        v = t
        steps = 0
        while v != s:
            u, e, fwd = parent[v]
            if fwd:
                inflow[e] = 1
                flow.add(e)
            else:
                inflow[e] = 0
                flow.discard(e)
            v = u
            steps += 1
            if steps > n:
                raise InternalInvariant("predecessor pointers contain a cycle")
        for v in range(n):
            if dist[v] is not None:
                pot[v] += dist[v][0]
        total += true_len
        edges = frozenset(flow)
        if total != g.total_cost(edges):
            raise InternalInvariant("flow cost drifted from its edge set")
        sol.levels.append(Level(edges, total))
    return sol


class BruteForceResult(NamedTuple):
    total: int
    bottleneck: int


def simple_paths(g: Digraph, s: int, t: int) -> list[tuple[tuple[int, ...], int]]:
    """Every vertex-simple s->t path as (edge ids, cost)."""
    out = []
    on_path = [False] * g.n
    on_path[s] = True
    stack: list[int] = []

    def dfs(u, cost):
        if u == t:
            out.append((tuple(stack), cost))
            return
        for e in g.out_index[u]:
            v = g.heads[e]
            if not on_path[v]:
                on_path[v] = True
                stack.append(e)
                dfs(v, cost + g.costs[e])
                stack.pop()
                on_path[v] = False

    if s != t:
        dfs(s, 0)
    return out


def brute_force_disjoint(
    g: Digraph, s: int, t: int, p: int, max_vertices: int = 10, max_edges: int = 20
) -> BruteForceResult | None:
    """Exhaustive optimum over all p-sets of pairwise edge-disjoint simple paths.

    Returns the minimum total cost and, separately, the minimum over such
    sets of the most expensive path; ``None`` when no p-set exists.
    """
    if g.n > max_vertices or g.m > max_edges:
        raise InstanceTooLarge(
            f"brute force limited to n<={max_vertices}, m<={max_edges}; got n={g.n}, m={g.m}"
        )
    paths = [(sum(1 << e for e in edges), cost) for edges, cost in simple_paths(g, s, t)]
    best_total = best_neck = None

    def search(start, k, used, total, neck):
        nonlocal best_total, best_neck
        if k == p:
            if best_total is None or total < best_total:
                best_total = total
            if best_neck is None or neck < best_neck:
                best_neck = neck
            return
        for j in range(start, len(paths)):
            mask, cost = paths[j]
            if not mask & used:
                search(j + 1, k + 1, used | mask, total + cost, max(neck, cost))

    search(0, 0, 0, 0, 0)
    if best_total is None:
        return None
    return BruteForceResult(best_total, best_neck)


def max_disjoint_paths(g: Digraph, s: int, t: int, cap: int | None = None) -> int:
    """Number of edge-disjoint s->t paths (unit-capacity max-flow), stopping at ``cap``."""
    if s == t:
        return g.n - 1
    inflow = bytearray(g.m)
    value = 0
    while cap is None or value < cap:
        parent: list = [None] * g.n
        parent[s] = (-1, -1, True)
        queue = deque([s])
        while queue and parent[t] is None:
            u = queue.popleft()
            for e in g.out_index[u]:
                v = g.heads[e]
                if not inflow[e] and parent[v] is None:
                    parent[v] = (u, e, True)
                    queue.append(v)
            for e in g.in_index[u]:
                v = g.tails[e]
                if inflow[e] and parent[v] is None:
                    parent[v] = (u, e, False)
                    queue.append(v)
        if parent[t] is None:
            break
        v = t
        while v != s:
            u, e, fwd = parent[v]
            inflow[e] = 1 if fwd else 0
            v = u
        value += 1
    return value
