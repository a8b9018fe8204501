"""
Two disjoint paths on a four-vertex graph
=========================================

A walk through the engine on a small graph, phase by phase.
"""

from multipath import Digraph, engine
from multipath.oracle import brute_force_disjoint

# vertices: 0 is the source, then a=1, b=2, t=3
g = Digraph(4, [(0, 1, 1), (1, 3, 3), (0, 2, 3), (2, 3, 1), (1, 2, 1), (2, 1, 5)])

# Phase 1 is just a shortest-path tree.
state = engine.init_phase1(g, 0)
print("tree edges:", sorted(state.preserver))
for t in (1, 2, 3):
    print(f"  path to {t}: edges {sorted(state.solution[t])}, cost {g.total_cost(state.solution[t])}")

# Phase 2 extracts targets Dijkstra-style. Each extraction composes the
# augmenting path of a finished hub with a tree path into the target.
trace = []
state = engine.run_phase(state, g, trace=trace)
for q, key, pi in trace:
    steps = " ".join(f"e{e}{'' if fwd else '(rev)'}" for e, fwd in pi)
    print(f"extract {q} at {tuple(key)}: {steps}")

# Every edge of the graph ends up in the preserver: three targets times two.
print("preserver:", sorted(state.preserver))

# Exhaustive search agrees on the optimum for each target.
for t in (1, 2, 3):
    print(t, g.total_cost(state.solution[t]), brute_force_disjoint(g, 0, t, 2).total)
