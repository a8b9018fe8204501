import random

import pytest

from multipath.graph import Digraph, generate_outconnected

# D1: s=0, a=1, b=2, t=3
D1_EDGES = [(0, 1, 1), (1, 3, 3), (0, 2, 3), (2, 3, 1), (1, 2, 1)]
# D2 adds (b -> a, 5) as edge 5
D2_EDGES = D1_EDGES + [(2, 1, 5)]


@pytest.fixture
def d1():
    return Digraph(4, D1_EDGES)


@pytest.fixture
def d2():
    return Digraph(4, D2_EDGES)


def random_instance(seed, n_range=(5, 40), p_range=(2, 5), max_costs=(0, 1, 3, 10, 100)):
    """Seeded p-outconnected instance with a density chosen by the seed."""
    rng = random.Random(seed)
    n = rng.randint(*n_range)
    p = rng.randint(p_range[0], min(p_range[1], n - 1))
    density = ("sparse", "medium", "dense")[seed % 3]
    extra = {"sparse": n, "medium": 4 * n, "dense": max(0, n * (n - 1) // 2 - p * (n - 1))}[density]
    g = generate_outconnected(n, p, extra, rng.choice(max_costs), seed)
    return g, p


def tiny_instance(seed):
    """Outconnected instance with n <= 8, m <= 18 and p in {2, 3}."""
    rng = random.Random(seed)
    p = 2 + seed % 2
    n = rng.randint(p + 1, 8 if p == 2 else 7)
    base = p * (n - 1)
    extra = rng.randint(0, 18 - base)
    g = generate_outconnected(n, p, extra, rng.choice((0, 2, 5, 9)), seed)
    return g, p


# ---------------------------------------------------------------------------
# one pass/fail line per acceptance criterion

ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
