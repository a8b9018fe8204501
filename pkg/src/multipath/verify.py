"""Independent checks on solver output: flow decomposition, disjointness,
oracle cost equality and preserver audits."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .errors import BadDivergence, CycleStuck, DecompositionError, LeftoverEdges
from .graph import Digraph
from .oracle import max_disjoint_paths, ssp_fast

log = logging.getLogger(__name__)


@dataclass
class Decomposition:
    paths: list[list[int]]
    edge_paths: list[list[int]]
    leftover: frozenset = frozenset()

    def path_costs(self, g: Digraph) -> list[int]:
        return [g.total_cost(ep) for ep in self.edge_paths]


def decompose(
    g: Digraph, solution, s: int, t: int, p: int, strict: bool = True
) -> Decomposition:
    """Split a unit flow of value p into p edge-disjoint s->t paths.

    Each walk starts at ``s`` and always leaves a vertex through its unused
    solution edge with the smallest id. In strict mode a walk that closes a
    cycle, or any edge left over, is an error; the lenient mode drops
    zero-cost cycles with a warning.
    """
    if s == t:
        raise ValueError("source and target coincide")
    solution = frozenset(solution)
    div = [0] * g.n
    for e in solution:
        div[g.tails[e]] += 1
        div[g.heads[e]] -= 1
    for v in range(g.n):
        want = p if v == s else -p if v == t else 0
        if div[v] != want:
            raise BadDivergence(v, div[v])

    unused = [sorted(e for e in g.out_index[u] if e in solution) for u in range(g.n)]
    for lst in unused:
        lst.reverse()  # pop() yields the smallest id
    dropped: set[int] = set()
    paths, edge_paths = [], []
    for _ in range(p):
        verts, edges = [s], []
        where = {s: 0}
        while verts[-1] != t:
            u = verts[-1]
            if not unused[u]:
                raise DecompositionError(f"walk stranded at vertex {u}")
            e = unused[u].pop()
            v = g.heads[e]
            if v in where:
                k = where[v]
                cycle_edges = edges[k:] + [e]
                if strict:
                    raise CycleStuck(verts[k:] + [v])
                _drop_cycle(g, cycle_edges)
                dropped.update(cycle_edges)
                for w in verts[k + 1:]:
                    del where[w]
                del verts[k + 1:]
                del edges[k:]
                continue
            where[v] = len(verts)
            verts.append(v)
            edges.append(e)
        paths.append(verts)
        edge_paths.append(edges)
    rest = frozenset(e for lst in unused for e in lst)
    if rest:
        if strict:
            raise LeftoverEdges(rest)
        _drop_cycle(g, rest)
    return Decomposition(paths, edge_paths, frozenset(dropped) | rest)


def _drop_cycle(g, edges):
    cost = g.total_cost(edges)
    if cost != 0:
        raise LeftoverEdges(edges)
    log.warning("discarding zero-cost cycle edges %s from a flow decomposition", sorted(edges))


def check_vertex_disjoint(decomp: Decomposition) -> bool:
    """True iff no internal vertex is shared between (or repeated within) paths."""
    seen: set[int] = set()
    for path in decomp.paths:
        for v in path[1:-1]:
            if v in seen:
                return False
            seen.add(v)
    return True


def check_outconnectivity(g: Digraph, s: int, p: int) -> dict[int, int]:
    """min(p, number of edge-disjoint s->t paths) for every t != s."""
    return {t: max_disjoint_paths(g, s, t, cap=p) for t in range(g.n) if t != s}


# --------------------------------------------------------------------------
# reports

@dataclass
class CheckItem:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class Report:
    items: list[CheckItem] = field(default_factory=list)
    notices: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(item.passed for item in self.items)

    def add(self, name: str, passed: bool, detail: str = "") -> None:
        self.items.append(CheckItem(name, bool(passed), detail))

    def extend(self, other: "Report") -> "Report":
        self.items.extend(other.items)
        self.notices.extend(other.notices)
        return self

    def failures(self) -> list[CheckItem]:
        return [item for item in self.items if not item.passed]

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "checks": [vars(item) for item in self.items],
            "notices": list(self.notices),
        }


def _oracle_view(g: Digraph, s: int, vertex_disjoint: bool):
    """Graph, source and target map on which the oracle should run."""
    if not vertex_disjoint:
        return g, s, (lambda t: t)
    from .transforms import split_vertices

    sg = split_vertices(g)
    return sg.graph, sg.v_out[s], (lambda t: sg.v_in[t])


def check_against_oracle(
    g: Digraph,
    s: int,
    p: int,
    solutions: dict[int, frozenset],
    sigma: dict[int, int] | None = None,
    vertex_disjoint: bool = False,
) -> Report:
    """Cost of every solution must equal the SSP optimum at its level."""
    report = Report()
    og, os_, tmap = _oracle_view(g, s, vertex_disjoint)
    mismatches = []
    for t in sorted(solutions):
        level = p if sigma is None else sigma[t]
        got = g.total_cost(solutions[t])
        if level == 0:
            want = 0
        else:
            ref = ssp_fast(og, os_, tmap(t), level)
            want = ref.cost(level) if ref.complete else None
        if got != want:
            mismatches.append((t, got, want))
    detail = ""
    if mismatches:
        t, got, want = mismatches[0]
        detail = f"target {t}: cost {got}, oracle {want} ({len(mismatches)} mismatches)"
    report.add("oracle_costs", not mismatches, detail)
    return report


def check_preserver(
    g: Digraph,
    s: int,
    p: int,
    preserver,
    solutions: dict[int, frozenset] | None = None,
    sigma: dict[int, int] | None = None,
    vertex_disjoint: bool = False,
) -> Report:
    """Audit a multipath preserver.

    1. size and in-degrees (0 at the source, sigma(t) elsewhere);
    2. the SSP optimum at every level up to sigma(t) is the same inside the
       preserver as in the whole graph;
    3. each given solution lies inside the preserver.
    """
    preserver = frozenset(preserver)
    report = Report()
    targets = [t for t in range(g.n) if t != s]
    want = {t: (p if sigma is None else sigma[t]) for t in targets}

    deg = g.in_degree(preserver)
    bad = [t for t in targets if deg[t] != want[t]]
    size_ok = len(preserver) == sum(want.values()) and deg[s] == 0 and not bad
    detail = ""
    if not size_ok:
        detail = f"size {len(preserver)} (expected {sum(want.values())}), in-degree(source)={deg[s]}"
        if bad:
            detail += f", vertex {bad[0]} has in-degree {deg[bad[0]]} (expected {want[bad[0]]})"
    report.add("preserver_degrees", size_ok, detail)

    sub, _ = g.subgraph(preserver)
    og, os_, tmap = _oracle_view(g, s, vertex_disjoint)
    oh, _, _ = _oracle_view(sub, s, vertex_disjoint)
    first = None
    for t in targets:
        k = want[t]
        if k == 0:
            continue
        full = ssp_fast(og, os_, tmap(t), k)
        inner = ssp_fast(oh, os_, tmap(t), k)
        a = [lv.cost for lv in full.levels]
        b = [lv.cost for lv in inner.levels]
        if a != b or len(a) != k:
            first = f"target {t}: graph levels {a}, preserver levels {b}"
            break
    report.add("preserver_levels", first is None, first or "")

    if solutions is not None:
        outside = [t for t in sorted(solutions) if not frozenset(solutions[t]) <= preserver]
        report.add(
            "containment",
            not outside,
            f"solution of {outside[0]} leaves the preserver" if outside else "",
        )
    return report
