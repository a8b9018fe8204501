"""
Graphs without p disjoint routes, and vertex-disjoint paths
===========================================================
"""

from multipath import Digraph, NotOutconnected, engine
from multipath.transforms import solve_general, solve_vertex_disjoint
from multipath.verify import check_vertex_disjoint, decompose

# Vertex 1 has a single way in, so two edge-disjoint paths cannot reach it.
g = Digraph(4, [(0, 1, 1), (1, 3, 3), (0, 2, 3), (2, 3, 1), (1, 2, 1)])
try:
    engine.run(g, 0, 2)
except NotOutconnected as exc:
    print("engine refuses:", exc)

# Cheap dummy hubs make the graph look connected enough; afterwards each
# target keeps as many paths as it really has.
sol = solve_general(g, 0, 2)
print("sigma:", sol.sigma)
print("preserver:", sorted(sol.preserver), "in-degrees:", g.in_degree(sol.preserver))

# Two cheap edge-disjoint routes to 4 share vertex 1 ...
w = Digraph(5, [(0, 1, 1), (0, 2, 1), (2, 1, 1), (1, 4, 1), (1, 3, 1), (3, 4, 1), (2, 3, 10)])
edge = solve_general(w, 0, 2)
print("edge-disjoint:", w.total_cost(edge.solutions[4]), decompose(w, edge.solutions[4], 0, 4, 2).paths)

# ... so insisting on distinct internal vertices costs more.
vd = solve_vertex_disjoint(w, 0, 2)
dec = decompose(w, vd.solutions[4], 0, 4, 2)
print("vertex-disjoint:", w.total_cost(vd.solutions[4]), dec.paths, check_vertex_disjoint(dec))
