"""Graph reductions around the engine.

* dummy augmentation makes any graph p-edge-outconnected without changing
  cheap optima, so the engine can report sigma(t) = min(p, lambda(t)) paths;
* vertex splitting turns vertex-disjointness into edge-disjointness;
* the bottleneck report measures the most expensive path of a solution.
"""
from __future__ import annotations

from dataclasses import dataclass

from . import engine
from .graph import Digraph
from .oracle import FlowSolution, Level
from .verify import decompose


@dataclass
class AugmentedGraph:
    """``graph`` keeps the original edges under their ids and appends dummy edges."""

    graph: Digraph
    source: int
    dummy_vertices: list[int]
    big_cost: int
    origin: list[int | None]

    def is_dummy_edge(self, e: int) -> bool:
        return self.origin[e] is None


def augment_with_dummies(g: Digraph, s: int, p: int) -> AugmentedGraph:
    """Add p dummy vertices forming a complete digraph, joined from ``s`` and to
    every other vertex, all with cost c(E(G)) + 1."""
    if not 1 <= p < g.n:
        raise ValueError(f"need 1 <= p < n (p={p}, n={g.n})")
    big = g.total_cost() + 1
    n = g.n
    dummies = list(range(n, n + p))
    arcs = [(e.tail, e.head, e.cost) for e in g.edges]
    arcs.extend((a, b, big) for a in dummies for b in dummies if a != b)
    arcs.extend((s, d, big) for d in dummies)
    arcs.extend((d, v, big) for d in dummies for v in range(n) if v != s)
    origin: list[int | None] = list(range(g.m)) + [None] * (len(arcs) - g.m)
    return AugmentedGraph(Digraph(n + p, arcs), s, dummies, big, origin)


def levels_from_sets(g: Digraph, t: int, sets) -> FlowSolution:
    return FlowSolution(t, len(sets), [Level(frozenset(x), g.total_cost(x)) for x in sets])


def extract_sigma(
    levels: FlowSolution, big_cost: int, origin: list[int | None] | None = None
) -> tuple[int, frozenset]:
    """Largest level whose cost stays below ``big_cost`` and its edge set,
    mapped to original edge ids. Level 0 (empty set) when none qualifies."""
    sigma = 0
    for i, lv in enumerate(levels.levels, start=1):
        if lv.cost < big_cost:
            sigma = i
    if sigma == 0:
        return 0, frozenset()
    edges = levels.edges(sigma)
    if origin is not None:
        mapped = [origin[e] for e in edges]
        if any(x is None for x in mapped):
            raise ValueError("a level below the dummy cost uses a dummy edge")
        edges = frozenset(mapped)
    return sigma, edges


def strip_dummies(preserver, aug: AugmentedGraph) -> frozenset:
    return frozenset(aug.origin[e] for e in preserver if aug.origin[e] is not None)


@dataclass
class SplitGraph:
    """Vertex v becomes ``v_in[v]`` (entry) and ``v_out[v]`` (exit).

    Original edge e keeps id e as (u_out, v_in); the gadget edge of vertex v
    has id m + v.
    """

    graph: Digraph
    v_in: list[int]
    v_out: list[int]
    origin: list[int | None]
    n_original: int

    def gadget(self, v: int) -> int:
        return self.graph.m - self.n_original + v


def split_vertices(g: Digraph) -> SplitGraph:
    v_in = [2 * v for v in range(g.n)]
    v_out = [2 * v + 1 for v in range(g.n)]
    arcs = [(v_out[e.tail], v_in[e.head], e.cost) for e in g.edges]
    arcs.extend((v_in[v], v_out[v], 0) for v in range(g.n))
    origin: list[int | None] = list(range(g.m)) + [None] * g.n
    return SplitGraph(Digraph(2 * g.n, arcs), v_in, v_out, origin, g.n)


def map_solution_back(edges, sg: SplitGraph, aug: AugmentedGraph | None = None) -> frozenset:
    """Original edge ids of a split-graph edge set, dropping gadget and dummy edges."""
    out = set()
    for e in edges:
        if aug is not None:
            e = aug.origin[e]
            if e is None:
                continue
        o = sg.origin[e]
        if o is not None:
            out.add(o)
    return frozenset(out)


def bottleneck_report(g: Digraph, solution, s: int, t: int, p: int) -> tuple[int, int]:
    """(total cost, cost of the most expensive path in the canonical decomposition)."""
    dec = decompose(g, solution, s, t, p)
    costs = dec.path_costs(g)
    return sum(costs), max(costs)


# --------------------------------------------------------------------------
# composed pipelines

@dataclass
class GeneralSolution:
    """Result on the original graph: sigma(t) paths per target and the
    stripped preserver with in-degree sigma(t) at every target."""

    p: int
    source: int
    sigma: dict[int, int]
    solutions: dict[int, frozenset]
    preserver: frozenset
    aug: AugmentedGraph
    engine_result: engine.EngineResult
    split: SplitGraph | None = None

    @property
    def timing(self) -> dict:
        return self.engine_result.timing


def solve_general(g: Digraph, s: int, p: int, threads: int = 1) -> GeneralSolution:
    """Engine on the dummy-augmented graph, read back onto ``g``."""
    aug = augment_with_dummies(g, s, p)
    res = engine.run(aug.graph, s, p, keep_intermediate=True, threads=threads)
    sigma, sols = {}, {}
    for t in range(g.n):
        if t == s:
            continue
        lv = levels_from_sets(aug.graph, t, res.levels[t])
        sigma[t], sols[t] = extract_sigma(lv, aug.big_cost, aug.origin)
    return GeneralSolution(p, s, sigma, sols, strip_dummies(res.preserver, aug), aug, res)


def solve_vertex_disjoint(g: Digraph, s: int, p: int, threads: int = 1) -> GeneralSolution:
    """Internally vertex-disjoint variant via splitting plus dummy augmentation.

    Paths run from the exit copy of ``s`` to the entry copy of each target.
    """
    if not 1 <= p < g.n:
        raise ValueError(f"need 1 <= p < n (p={p}, n={g.n})")
    sg = split_vertices(g)
    src = sg.v_out[s]
    aug = augment_with_dummies(sg.graph, src, p)
    res = engine.run(aug.graph, src, p, keep_intermediate=True, threads=threads)
    sigma, sols = {}, {}
    for t in range(g.n):
        if t == s:
            continue
        lv = levels_from_sets(aug.graph, sg.v_in[t], res.levels[sg.v_in[t]])
        k, edges = extract_sigma(lv, aug.big_cost)
        sigma[t] = k
        sols[t] = map_solution_back(edges, sg, aug)
    # edges into the entry copy of s serve no s -> t path
    preserver = frozenset(e for e in map_solution_back(res.preserver, sg, aug) if g.heads[e] != s)
    return GeneralSolution(p, s, sigma, sols, preserver, aug, res, split=sg)
