"""Directed multigraph with identified edges, residual orientation and the
lexicographic (cost, hops) metric, plus text I/O and random instances."""
from __future__ import annotations

import math
import random
from decimal import Decimal, InvalidOperation
from typing import Iterable, NamedTuple, Sequence

from .errors import GraphFormatError

EdgeSet = frozenset  # frozenset[int] of edge ids


class EdgeRecord(NamedTuple):
    id: int
    tail: int
    head: int
    cost: int


class Digraph:
    """Immutable directed multigraph on vertices ``0..n-1``.

    Parallel edges and mutually reverse pairs are allowed; every edge is
    identified by its position in ``edges``.
    """

    __slots__ = ("n", "edges", "tails", "heads", "costs", "out_index", "in_index")

    def __init__(self, n: int, edges: Iterable[tuple[int, int, int]]):
        if n < 1:
            raise ValueError("a graph needs at least one vertex")
        recs = []
        out_index = [[] for _ in range(n)]
        in_index = [[] for _ in range(n)]
        for i, (u, v, c) in enumerate(edges):
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {i} ({u}->{v}) has an endpoint outside [0, {n})")
            if u == v:
                raise ValueError(f"edge {i} is a self-loop at {u}")
            if int(c) != c or c < 0:
                raise ValueError(f"edge {i} has cost {c}; costs must be non-negative integers")
            recs.append(EdgeRecord(i, u, v, int(c)))
            out_index[u].append(i)
            in_index[v].append(i)
        self.n = n
        self.edges = tuple(recs)
        self.tails = tuple(r.tail for r in recs)
        self.heads = tuple(r.head for r in recs)
        self.costs = tuple(r.cost for r in recs)
        self.out_index = tuple(tuple(x) for x in out_index)
        self.in_index = tuple(tuple(x) for x in in_index)

    @property
    def m(self) -> int:
        return len(self.edges)

    def __repr__(self):
        return f"Digraph(n={self.n}, m={self.m})"

    def __eq__(self, other):
        if not isinstance(other, Digraph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def total_cost(self, edge_ids: Iterable[int] | None = None) -> int:
        if edge_ids is None:
            return sum(self.costs)
        return sum(self.costs[e] for e in edge_ids)

    def subgraph(self, edge_ids: Iterable[int]) -> tuple["Digraph", list[int]]:
        """Edge-induced subgraph on the same vertex set.

        Returns the subgraph and the list mapping its edge ids back to ours.
        """
        keep = sorted(set(edge_ids))
        sub = Digraph(self.n, [(self.tails[e], self.heads[e], self.costs[e]) for e in keep])
        return sub, keep

    def in_degree(self, edge_ids: Iterable[int]) -> list[int]:
        deg = [0] * self.n
        for e in edge_ids:
            deg[self.heads[e]] += 1
        return deg


class OrientedEdge(NamedTuple):
    """An original edge (``forward``) or its residual reversal."""

    edge: int
    forward: bool = True

    def tail(self, g: Digraph) -> int:
        return g.tails[self.edge] if self.forward else g.heads[self.edge]

    def head(self, g: Digraph) -> int:
        return g.heads[self.edge] if self.forward else g.tails[self.edge]

    def cost(self, g: Digraph) -> int:
        c = g.costs[self.edge]
        return c if self.forward else -c


class LexCost(NamedTuple):
    """Pair ``(cost, hops)`` ordered lexicographically.

    ``TOP`` is ``(inf, inf)``: larger than every finite pair and absorbing
    under addition, which float infinity gives for free.
    """

    cost: int | float
    hops: int | float

    def __add__(self, other):  # type: ignore[override]
        return LexCost(self.cost + other[0], self.hops + other[1])

    @property
    def is_top(self) -> bool:
        return math.isinf(self.cost)


ZERO = LexCost(0, 0)
TOP = LexCost(math.inf, math.inf)


def lex_compare(a: LexCost, b: LexCost) -> int:
    """-1, 0 or 1 as ``a`` precedes, equals or follows ``b``."""
    a, b = tuple(a), tuple(b)
    return (a > b) - (a < b)


def lex_add(a: LexCost, b: LexCost) -> LexCost:
    return LexCost(a[0] + b[0], a[1] + b[1])


def oriented_cost(g: Digraph, e: OrientedEdge, preserver: frozenset | set = frozenset()) -> LexCost:
    """Signed cost of ``e`` plus one hop iff it is a forward edge outside ``preserver``.

    Reversed edges always come from a solution set that already lies inside
    the preserver, so they never count as hops.
    """
    if not 0 <= e.edge < g.m:
        raise ValueError(f"edge id {e.edge} out of range [0, {g.m})")
    if e.forward:
        return LexCost(g.costs[e.edge], 0 if e.edge in preserver else 1)
    return LexCost(-g.costs[e.edge], 0)


def path_cost(g: Digraph, path: Sequence[OrientedEdge], preserver=frozenset()) -> LexCost:
    total = ZERO
    for e in path:
        total = lex_add(total, oriented_cost(g, e, preserver))
    return total


def path_vertices(g: Digraph, path: Sequence[OrientedEdge], start: int) -> list[int]:
    """Vertex sequence of an oriented path; checks that consecutive edges chain."""
    verts = [start]
    for e in path:
        if e.tail(g) != verts[-1]:
            raise ValueError(f"oriented edge {e} does not start at {verts[-1]}")
        verts.append(e.head(g))
    return verts


# --------------------------------------------------------------------------
# text format

def _parse_cost(token: str, scale: int, line: int) -> int:
    try:
        value = Decimal(token)
    except InvalidOperation:
        raise GraphFormatError(f"bad cost {token!r}", line) from None
    if not value.is_finite():
        raise GraphFormatError(f"bad cost {token!r}", line)
    if value < 0:
        raise GraphFormatError(f"negative cost {token}", line)
    scaled = value.scaleb(scale)
    if scaled != scaled.to_integral_value():
        raise GraphFormatError(
            f"cost {token} is not an integer after scaling by 10^{scale}", line
        )
    return int(scaled)


def parse_graph(text: str, scale: int = 0) -> tuple[Digraph, int]:
    """Parse the ``p edp`` line format; returns the graph and the 0-based source.

    Costs may be decimals when ``scale`` is given: they are multiplied by
    ``10**scale`` and must then be integral.
    """
    n = m = source = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tok = raw.split()
        if not tok or tok[0] == "c":
            continue
        kind = tok[0]
        if n is None and kind != "p":
            raise GraphFormatError("expected 'p edp <n> <m>' header first", lineno)
        try:
            if kind == "p":
                if n is not None:
                    raise GraphFormatError("duplicate header", lineno)
                if len(tok) != 4 or tok[1] != "edp":
                    raise GraphFormatError("header must be 'p edp <n> <m>'", lineno)
                n, m = int(tok[2]), int(tok[3])
                if n < 1 or m < 0:
                    raise GraphFormatError("header counts out of range", lineno)
            elif kind == "s":
                if source is not None:
                    raise GraphFormatError("duplicate source line", lineno)
                if len(tok) != 2:
                    raise GraphFormatError("source line must be 's <v>'", lineno)
                source = int(tok[1]) - 1
                if not 0 <= source < n:
                    raise GraphFormatError(f"source {tok[1]} out of range", lineno)
            elif kind == "a":
                if len(tok) != 4:
                    raise GraphFormatError("arc line must be 'a <tail> <head> <cost>'", lineno)
                u, v = int(tok[1]) - 1, int(tok[2]) - 1
                if not (0 <= u < n and 0 <= v < n):
                    raise GraphFormatError(f"vertex id out of range in {raw.strip()!r}", lineno)
                if u == v:
                    raise GraphFormatError(f"self-loop at vertex {u + 1}", lineno)
                edges.append((u, v, _parse_cost(tok[3], scale, lineno)))
            else:
                raise GraphFormatError(f"unknown line type {kind!r}", lineno)
        except ValueError as exc:
            if isinstance(exc, GraphFormatError):
                raise
            raise GraphFormatError(f"malformed line {raw.strip()!r}", lineno) from None
    if n is None:
        raise GraphFormatError("missing 'p edp' header")
    if source is None:
        raise GraphFormatError("missing source line")
    if len(edges) != m:
        raise GraphFormatError(f"header declares {m} arcs but {len(edges)} were given")
    return Digraph(n, edges), source


def write_graph(g: Digraph, source: int, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"c {row}" for row in comment.splitlines())
    lines.append(f"p edp {g.n} {g.m}")
    lines.append(f"s {source + 1}")
    lines.extend(f"a {e.tail + 1} {e.head + 1} {e.cost}" for e in g.edges)
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# random instances

def generate_outconnected(
    n: int, p: int, extra_edges: int = 0, max_cost: int = 100, seed: int | None = None
) -> Digraph:
    """Random graph that is p-edge-outconnected from vertex 0.

    Built from p random spanning arborescences rooted at 0, each a separate
    set of edge ids (so the union keeps p edge-disjoint paths to every
    vertex), plus ``extra_edges`` uniform random edges. A tree edge avoids
    repeating an existing (tail, head) pair when another parent is available.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    if not 1 <= p <= n - 1:
        raise ValueError("p must lie in [1, n-1]")
    if extra_edges < 0 or max_cost < 0:
        raise ValueError("extra_edges and max_cost must be non-negative")
    rng = random.Random(seed)
    pairs: set[tuple[int, int]] = set()
    arcs: list[tuple[int, int]] = []
    for _ in range(p):
        order = list(range(1, n))
        rng.shuffle(order)
        placed = [0]
        for v in order:
            fresh = [u for u in placed if (u, v) not in pairs]
            u = rng.choice(fresh or placed)
            pairs.add((u, v))
            arcs.append((u, v))
            placed.append(v)
    free = n * (n - 1) - len(pairs)
    for _ in range(extra_edges):
        while True:
            u, v = rng.randrange(n), rng.randrange(n)
            if u == v:
                continue
            if (u, v) in pairs and free > 0:
                continue
            break
        if (u, v) not in pairs:
            free -= 1
        pairs.add((u, v))
        arcs.append((u, v))
    rng.shuffle(arcs)
    return Digraph(n, [(u, v, rng.randint(0, max_cost)) for u, v in arcs])


def generate_random(n: int, m: int, max_cost: int = 10, seed: int | None = None) -> Digraph:
    """Uniform random multigraph without self-loops; no connectivity promise."""
    rng = random.Random(seed)
    arcs = []
    while len(arcs) < m:
        u, v = rng.randrange(n), rng.randrange(n)
        if u != v:
            arcs.append((u, v, rng.randint(0, max_cost)))
    return Digraph(n, arcs)
