from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hamtetra.corpus import random_points
from hamtetra.errors import FaceInconsistency, NonClosingTrace, ParseError
from hamtetra.graph import (
    RotGraph,
    dual_of_mesh,
    euler_characteristic,
    format_graph,
    hull_dual,
    is_planar_embedding,
    is_three_connected,
    parse_graph,
    trace_faces,
)
from hamtetra.hull import convex_hull, skeleton_degrees
from hamtetra.mesh import TetMesh
from hamtetra.pipeline import fan_tetrahedralize, place_center

from conftest import ICOSAHEDRON, OCTAHEDRON, UNIT_TET, P, small_cubic_graphs

K4_ROT = [[1, 2, 3], [0, 3, 2], [0, 1, 3], [0, 2, 1]]


def brute_dual_edges(mesh):
    ids = sorted(mesh.tets)
    return {
        (a, b)
        for a, b in combinations(ids, 2)
        if len(set(mesh.tets[a]) & set(mesh.tets[b])) == 3
    }


def fan_of(points):
    h = convex_hull(points)
    return h, fan_tetrahedralize(h, place_center(h))


def test_dual_of_single_tet():
    mesh = TetMesh()
    for p in UNIT_TET:
        mesh.add_vertex(p, "exterior")
    mesh.add_tet((0, 1, 2, 3))
    d = dual_of_mesh(mesh)
    assert d.vertices == [0] and d.edges() == []


def test_dual_of_fans():
    for pts, nxg in ((UNIT_TET, nx.complete_graph(4)), (OCTAHEDRON, nx.hypercube_graph(3))):
        h, mesh = fan_of(pts)
        d = dual_of_mesh(mesh)
        assert set(d.edges()) == brute_dual_edges(mesh)
        assert all(d.degree(v) == 3 for v in d.vertices)
        assert len(d.vertices) == 2 * h.m - 4
        g = nx.Graph(d.edges())
        assert nx.is_isomorphic(g, nxg)
        for (a, b), face in d.shared.items():
            assert set(face) == set(mesh.tets[a]) & set(mesh.tets[b])


def test_dual_rejects_overfull_face():
    mesh = TetMesh()
    for p in UNIT_TET + [P(1, 1, 1), P(-1, -1, -1)]:
        mesh.add_vertex(p, "exterior")
    mesh.tets = {0: (0, 1, 2, 3), 1: (1, 2, 3, 4), 2: (1, 2, 3, 5)}
    with pytest.raises(FaceInconsistency):
        dual_of_mesh(mesh)


def test_hull_duals():
    g = hull_dual(convex_hull(UNIT_TET))
    assert g.is_cubic() and euler_characteristic(g) == 2 and g.n == 4
    g = hull_dual(convex_hull(OCTAHEDRON))
    assert nx.is_isomorphic(nx.Graph(g.edges()), nx.hypercube_graph(3))
    g = hull_dual(convex_hull(ICOSAHEDRON))
    assert g.n == 20 and g.is_cubic() and len(trace_faces(g)) == 12
    assert nx.is_isomorphic(nx.Graph(g.edges()), nx.dodecahedral_graph())
    assert is_three_connected(g)


@given(st.integers(0, 10**6), st.integers(5, 40))
def test_hull_dual_faces_are_vertex_stars(seed, n):
    h = convex_hull(random_points(n, seed, "sphere"))
    g = hull_dual(h)
    faces = trace_faces(g)
    assert g.n - g.num_edges + len(faces) == 2
    assert len(faces) == h.m == (g.n + 4) // 2
    deg = skeleton_degrees(h)
    stars = {}
    for face in faces:
        common = set.intersection(*(set(h.facets[f]) for f in face))
        (v,) = common
        stars[v] = len(face)
    assert stars == deg
    # every directed edge once
    darts = [(f[i], f[(i + 1) % len(f)]) for f in faces for i in range(len(f))]
    assert len(darts) == len(set(darts)) == 2 * g.num_edges


def test_trace_faces_examples():
    k4 = RotGraph(K4_ROT)
    assert sorted(len(f) for f in trace_faces(k4)) == [3, 3, 3, 3]
    q3 = hull_dual(convex_hull(OCTAHEDRON))
    assert sorted(len(f) for f in trace_faces(q3)) == [4] * 6


def test_inconsistent_rotation():
    bad = RotGraph([[1, 2, 3], [0, 2, 3], [0, 1, 3], [0, 1, 2]])
    # same graph as K4, but this rotation embeds it on the torus
    assert euler_characteristic(bad) == 0 and not is_planar_embedding(bad)
    asym = RotGraph([[1], []])
    with pytest.raises(NonClosingTrace):
        trace_faces(asym)


def test_three_connectivity_examples():
    assert is_three_connected(RotGraph(K4_ROT))
    two_k4 = nx.Graph(list(combinations(range(4), 2)) + list(combinations([3, 4, 5, 6], 2)))
    assert not is_three_connected([sorted(two_k4[v]) for v in range(7)])
    assert is_three_connected(hull_dual(convex_hull(OCTAHEDRON)))


@pytest.mark.parametrize("name,adj", sorted(small_cubic_graphs().items()))
def test_three_connectivity_matches_networkx(name, adj):
    g = nx.Graph([(u, v) for u, r in enumerate(adj) for v in r])
    assert is_three_connected(adj) == (nx.node_connectivity(g) >= 3)


@given(st.integers(0, 10**6))
def test_three_connectivity_random_graphs(seed):
    g = nx.gnp_random_graph(9, 0.5, seed=seed)
    adj = [sorted(g[v]) for v in range(9)]
    expected = nx.is_connected(g) and nx.node_connectivity(g) >= 3
    assert is_three_connected(adj) == expected


def test_format_roundtrip_with_labels():
    g = RotGraph(K4_ROT, labels=[None, 0, 0, "b"])
    text = format_graph(g, ["demo"])
    assert text.splitlines()[:2] == ["# demo", "4 6"]
    back = parse_graph(text)
    assert back.rot == g.rot and back.labels == [None, 0, 0, "b"]
    g2 = RotGraph(K4_ROT, labels=[0, None, 1, None])
    assert parse_graph(format_graph(g2)).labels == [0, None, 1, None]


@pytest.mark.parametrize(
    "text,line",
    [
        ("4 6\n1 2 3\n0 3 2\n0 1 3\n", 1),
        ("4 5\n1 2 3\n0 3 2\n0 1 3\n0 2 1\n", 1),
        ("4 6\n1 2 x\n0 3 2\n0 1 3\n0 2 1\n", 2),
        ("4\n", 1),
    ],
)
def test_parse_errors_report_lines(text, line):
    with pytest.raises(ParseError) as exc:
        parse_graph(text)
    assert exc.value.line == line and str(exc.value).startswith(f"line {line}:")


def test_parse_rejects_asymmetric():
    with pytest.raises(ParseError):
        parse_graph("3 2\n1\n2\n0\n")
