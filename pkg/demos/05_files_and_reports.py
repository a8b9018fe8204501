"""
Files in, JSON out
==================

The text format and the solve / verify documents used by the CLI,
driven from Python.
"""

import json

from multipath import parse_graph
from multipath.cli import solve, verify

text = """c a small example; vertex ids are 1-based
p edp 4 6
s 1
a 1 2 1
a 2 4 3
a 1 3 3
a 3 4 1
a 2 3 1
a 3 2 5
"""
g, s = parse_graph(text)
doc = solve(g, s, p=2)
for rec in doc["targets"]:
    print(json.dumps(rec))

report = verify(g, s, doc)
print([(c.name, c.passed) for c in report.items])

# A hand-edited document fails loudly.
doc["targets"][0]["total_cost"] -= 1
print(verify(g, s, doc).failures())

# Decimal costs are scaled to integers on the way in.
g2, _ = parse_graph("p edp 2 1\ns 1\na 1 2 0.75\n", scale=2)
print(g2.costs)
