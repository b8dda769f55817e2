import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hamtetra.ccplab import (
    blow_up,
    find_ham_cycle,
    k4_counterexample,
    load_gadget,
    lower_bound_family,
    pulling_face,
    pulling_tetrahedralization,
)
from hamtetra.ccplab.blowup import (
    components,
    cube,
    cycles_per_copy,
    face_labels,
    inter_copy_edges,
    k4,
    matching_cycles,
)
from hamtetra.corpus import random_points
from hamtetra.errors import InteriorPointsPresent, NotAFace, NotCubic
from hamtetra.graph import RotGraph, euler_characteristic, hull_dual, is_three_connected, trace_faces
from hamtetra.hull import convex_hull
from hamtetra.verify import check_certificate, verify_mesh

from conftest import ICOSAHEDRON, OCTAHEDRON, P, UNIT_TET


def is_plane_cubic(g):
    return g.is_cubic() and g.is_symmetric() and euler_characteristic(g) == 2


# ------------------------------------------------------------------- blow-up


@pytest.mark.parametrize("base", [k4(), cube()], ids=["k4", "cube"])
@pytest.mark.parametrize("gadget", [k4(), cube()], ids=["k4", "cube"])
@pytest.mark.parametrize("face", [0, 1, 2])
def test_blow_up_counts_and_planarity(base, gadget, face):
    g = blow_up(base, 0, gadget, 0, face)
    assert g.n == base.n + gadget.n + 2
    assert is_plane_cubic(g) and is_three_connected(g)
    assert [g.roles[x] for x in range(g.n) if g.roles[x]] == ["v1'", "v2'", "w", "v3'"]
    # exactly three edges leave the copy
    assert len(inter_copy_edges(g)) == 3


def test_blow_up_rejects_non_cubic():
    tri = RotGraph([[1, 2], [2, 0], [0, 1]])
    with pytest.raises(NotCubic):
        blow_up(tri, 0, k4(), 0)
    with pytest.raises(NotCubic):
        blow_up(k4(), 0, tri, 0)


def test_k4_counterexample_shape():
    g = k4_counterexample(load_gadget())
    assert (g.n, g.num_edges, len(trace_faces(g))) == (164, 246, 84)
    assert is_plane_cubic(g) and is_three_connected(g)
    assert sorted(len(g.members(c)) for c in g.copy_ids()) == [41] * 4
    cut = inter_copy_edges(g)
    assert len(cut) == 6
    kept = set(g.edges()) - set(cut)
    assert sorted(len(c) for c in components(g.n, sorted(kept))) == [41] * 4


def test_k4_counterexample_copies_sit_in_distinct_faces():
    g = k4_counterexample(load_gadget())
    placed = []
    for f, labs in face_labels(g):
        if len(labs) > 1:
            inner = {g.labels[x] for x in f if g.roles[x] is None}
            assert len(inner) == 1
            placed.extend(inner)
    assert sorted(placed) == [0, 1, 2, 3]


def test_lower_bound_family_on_cube():
    g = lower_bound_family(cube(), load_gadget())
    assert g.n == 8 * 41 == 328
    assert is_plane_cubic(g)
    assert sorted(len(g.members(c)) for c in g.copy_ids()) == [41] * 8


def test_small_blow_up_is_still_hamiltonian_when_gadget_is():
    # with a Hamiltonian gadget the blow-up of K4 keeps a Hamiltonian cycle
    g = k4_counterexample(cube())
    assert g.n == 4 * (8 + 3)
    assert find_ham_cycle(g)


def test_matching_cycles_partition_the_vertices():
    g = k4_counterexample(load_gadget())
    cycles = matching_cycles(g)
    assert sorted(x for c in cycles for x in c) == list(range(g.n))
    for c in cycles:
        assert len(c) >= 3
        for i in range(len(c)):
            assert c[(i + 1) % len(c)] in g.rot[c[i]]
    per = cycles_per_copy(g, cycles)
    assert set(per) == {0, 1, 2, 3}


def test_cycles_per_copy_counts_only_whole_cycles():
    g = RotGraph([[1, 2, 3], [0, 3, 2], [0, 1, 3], [0, 2, 1]], labels=[0, 0, 0, 1])
    assert cycles_per_copy(g, [[0, 1, 2], [0, 1, 3]]) == {0: 1, 1: 0}


# ------------------------------------------------------------------- pulling


def test_pulling_face_k4():
    g = k4()
    face, rest = pulling_face(g, [0, 1, 2, 3])
    assert sorted(face) == [0, 1, 2] and rest == [3]


def test_pulling_face_cube():
    g = cube()
    cyc = find_ham_cycle(g).order
    face, rest = pulling_face(g, cyc)
    assert len(face) == 4 and len(rest) == 4
    assert set(face) | set(rest) == set(range(8))
    assert all(rest[i + 1] in g.rot[rest[i]] for i in range(3))


def test_pulling_face_rejects_chordless_input():
    # a 4-cycle drawn with no chords: the only edges are cycle edges
    square = RotGraph([[1, 3], [2, 0], [3, 1], [0, 2]])
    with pytest.raises(NotAFace):
        pulling_face(square, [0, 1, 2, 3])


def test_pulling_face_icosahedron_dual():
    g = hull_dual(convex_hull(ICOSAHEDRON))
    face, rest = pulling_face(g, find_ham_cycle(g).order)
    assert len(face) == 5 and len(rest) == 20 - 5


@pytest.mark.parametrize("pts,n_tets", [(UNIT_TET, 1), (OCTAHEDRON, 4), (ICOSAHEDRON, 15)])
def test_pulling_examples(pts, n_tets):
    mesh, cert, p = pulling_tetrahedralization(pts)
    assert len(mesh.tets) == n_tets == len(cert.order)
    assert all(p in t for t in mesh.tets.values())
    assert check_certificate(mesh, cert.order, False).ok
    assert verify_mesh(pts, mesh, "oracle", cert).ok


@settings(max_examples=25)
@given(st.integers(0, 10**6), st.integers(5, 18))
def test_pulling_random_convex_position(seed, n):
    pts = random_points(n, seed, "sphere")
    out = pulling_tetrahedralization(pts)
    assert out is not None
    mesh, cert, p = out
    h = convex_hull(pts)
    # every facet not incident to p becomes one tetrahedron
    assert len(mesh.tets) == 2 * h.m - 4 - sum(p in f for f in h.facets)
    assert verify_mesh(pts, mesh, "oracle", cert).ok


def test_pulling_rejects_interior_points():
    with pytest.raises(InteriorPointsPresent):
        pulling_tetrahedralization(OCTAHEDRON + [P(0, 0, 0)])


def test_pulling_returns_none_on_budget():
    pts = random_points(16, 3, "sphere")
    assert pulling_tetrahedralization(pts, budget=0) is None
