"""
Auditing a preserver
====================

The preserver keeps p edges into every vertex and nothing else, yet the
optimal p-path cost to every target is unchanged inside it.
"""

import numpy as np

from multipath import engine, generate_outconnected
from multipath.oracle import ssp_fast
from multipath.verify import check_against_oracle, check_preserver

n, p = 40, 3
g = generate_outconnected(n, p, extra_edges=500, max_cost=50, seed=4)
res = engine.run(g, 0, p)
print(f"{g.m} edges in, {len(res.preserver)} kept (p(n-1) = {p * (n - 1)})")

# in-degree profile: 0 at the source, p everywhere else
print("in-degrees:", np.bincount(g.in_degree(res.preserver)))

# per-target costs against successive shortest paths on the full graph
print(check_against_oracle(g, 0, p, res.solutions).to_dict())
print(check_preserver(g, 0, p, res.preserver, res.solutions).ok)

# How much does a target lose when the graph shrinks to the preserver?
# Nothing at any level:
sub, _ = g.subgraph(res.preserver)
t = n - 1
print([lv.cost for lv in ssp_fast(g, 0, t, p).levels], [lv.cost for lv in ssp_fast(sub, 0, t, p).levels])

# Deleting any single preserver edge breaks the audit.
e = min(res.preserver)
print(check_preserver(g, 0, p, res.preserver - {e}).failures())
