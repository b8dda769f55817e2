import math
from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import settings

from hamtetra.geom import Point3

settings.register_profile("repo", deadline=None, max_examples=60, derandomize=True)
settings.load_profile("repo")


def P(x, y, z):
    return Point3(x, y, z)


UNIT_TET = [P(0, 0, 0), P(1, 0, 0), P(0, 1, 0), P(0, 0, 1)]
OCTAHEDRON = [P(1, 0, 0), P(-1, 0, 0), P(0, 1, 0), P(0, -1, 0), P(0, 0, 1), P(0, 0, -1)]
PHI = Fraction(1618, 1000)
ICOSAHEDRON = [
    P(*t)
    for a in (1, -1)
    for b in (PHI, -PHI)
    for t in ((0, a, b), (a, b, 0), (b, 0, a))
]


def double_pyramid(k):
    """Apexes above and below a k-gon inscribed in the unit circle."""
    ring = []
    for i in range(k):
        half = math.pi * (i + 0.5) / k
        if abs(math.cos(half)) < 1e-9:
            ring.append(P(-1, 0, 0))
            continue
        # rational point on the circle from t = tan(angle / 2)
        t = Fraction(math.tan(half)).limit_denominator(1000)
        ring.append(P((1 - t * t) / (1 + t * t), 2 * t / (1 + t * t), 0))
    return [P(0, 0, 1), P(0, 0, -1)] + ring


def nx_to_adj(g):
    g = nx.convert_node_labels_to_integers(g)
    return [sorted(g[v]) for v in range(g.number_of_nodes())]


def small_cubic_graphs():
    """Cubic bridgeless graphs on at most 12 vertices used as a test corpus.

    The Moebius-Kantor graph itself has 16 vertices, so the subset in range
    is the family of Moebius ladders on 6 to 12 vertices.
    """
    out = {
        "K4": nx.complete_graph(4),
        "Q3": nx.hypercube_graph(3),
        "Petersen": nx.petersen_graph(),
        "Frucht": nx.frucht_graph(),
    }
    for k in (3, 4, 5, 6):
        out[f"prism-{k}"] = nx.circular_ladder_graph(k)
    for n in (6, 8, 10, 12):
        out[f"moebius-{n}"] = nx.circulant_graph(n, [1, n // 2])
    return {name: nx_to_adj(g) for name, g in out.items()}


@pytest.fixture
def octahedron():
    return list(OCTAHEDRON)


@pytest.fixture
def unit_tet():
    return list(UNIT_TET)


@pytest.fixture
def icosahedron():
    return list(ICOSAHEDRON)


# acceptance criteria report: one line per criterion at the end of the run
_criteria = pytest.StashKey[dict]()


@pytest.fixture
def criterion(request):
    results = request.config.stash.setdefault(_criteria, {})

    def record(number, passed, detail=""):
        results[number] = (passed, detail)
        return passed

    return record


def pytest_terminal_summary(terminalreporter, config):
    results = config.stash.get(_criteria, None)
    if not results:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for number in range(1, 11):
        passed, detail = results.get(number, (False, "did not run to completion"))
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {detail}")
