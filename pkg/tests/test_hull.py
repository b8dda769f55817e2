from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.spatial import ConvexHull

from hamtetra.corpus import random_points
from hamtetra.errors import GeneralPositionViolation, TooFewPoints
from hamtetra.geom import Point3, orient3d
from hamtetra.hull import convex_hull, peel_degree3, skeleton_degrees

from conftest import OCTAHEDRON, P, UNIT_TET, double_pyramid


def brute_force_facets(pts):
    """Triples whose plane has every other point strictly on one side."""
    out = set()
    for a, b, c in combinations(range(len(pts)), 3):
        sides = {orient3d(pts[a], pts[b], pts[c], pts[d]) for d in range(len(pts)) if d not in (a, b, c)}
        if sides in ({1}, {-1}):
            out.add(frozenset((a, b, c)))
    return out


def check_invariants(h, complete=True):
    m = h.m
    assert len(h.facets) == 2 * m - 4
    assert len(h.edges) == 3 * m - 6
    assert m - len(h.edges) + len(h.facets) == 2
    # after peeling, some interior points may sit in the removed caps
    others = h.exterior + h.interior if complete else h.exterior
    for i, f in enumerate(h.facets):
        for q in others:
            if q not in f:
                assert h.sees(i, h.points[q]) < 0
    if complete:
        assert sorted(h.exterior + h.interior) == list(range(len(h.points)))


def test_four_points():
    h = convex_hull(UNIT_TET)
    assert len(h.facets) == 4 and h.interior == []
    check_invariants(h)


def test_octahedron():
    h = convex_hull(OCTAHEDRON)
    assert (len(h.facets), len(h.edges), len(h.interior)) == (8, 12, 0)
    assert set(skeleton_degrees(h).values()) == {4}
    assert h.volume6() == 8
    check_invariants(h)


def test_tetrahedron_plus_barycenter():
    pts = UNIT_TET + [P(Fraction(1, 4), Fraction(1, 4), Fraction(1, 4))]
    h = convex_hull(pts)
    assert len(h.facets) == 4 and h.interior == [4]


def test_degrees_tetrahedron_and_double_pyramid():
    assert set(skeleton_degrees(convex_hull(UNIT_TET)).values()) == {3}
    for k in (4, 5, 7, 9):
        pts = double_pyramid(k)
        deg = skeleton_degrees(convex_hull(pts))
        m = len(pts)
        assert deg[0] == deg[1] == m - 2
        assert all(deg[v] == 4 for v in range(2, m))
        assert sum(deg.values()) == 2 * (3 * m - 6)


def test_errors():
    with pytest.raises(TooFewPoints):
        convex_hull(UNIT_TET[:3])
    with pytest.raises(GeneralPositionViolation):
        convex_hull([P(0, 0, 0), P(1, 0, 0), P(0, 1, 0), P(1, 1, 0), P(2, 3, 0)])
    # a point in the middle of a facet
    with pytest.raises(GeneralPositionViolation):
        convex_hull(UNIT_TET + [P(Fraction(1, 3), Fraction(1, 3), 0)])
    # a cube: adjacent facets coplanar
    cube = [P(x, y, z) for x in (0, 1) for y in (0, 1) for z in (0, 1)]
    with pytest.raises(GeneralPositionViolation):
        convex_hull(cube)


@pytest.mark.parametrize("seed", range(6))
@pytest.mark.parametrize("shape", ["ball", "sphere"])
def test_matches_scipy_qhull(seed, shape):
    pts = random_points(60, seed, shape)
    h = convex_hull(pts)
    arr = np.array([p.to_float() for p in pts])
    assert h.exterior == sorted(ConvexHull(arr).vertices.tolist())
    check_invariants(h)


small_sets = st.lists(
    st.tuples(*(st.integers(-30, 30),) * 3), min_size=5, max_size=11, unique=True
).map(lambda ts: [Point3(*t) for t in ts])


@given(small_sets)
def test_matches_brute_force_facets(pts):
    try:
        h = convex_hull(pts)
    except GeneralPositionViolation:
        return
    assert {frozenset(f) for f in h.facets} == brute_force_facets(pts)
    check_invariants(h)


@given(st.integers(0, 10**6))
def test_hull_of_exterior_points_is_identical(seed):
    pts = random_points(25, seed, "ball")
    h = convex_hull(pts)
    sub = [pts[i] for i in h.exterior]
    h2 = convex_hull(sub)
    relabel = {frozenset(h.exterior[i] for i in f) for f in h2.facets}
    assert relabel == {frozenset(f) for f in h.facets}


def test_peel_examples():
    oct_h = convex_hull(OCTAHEDRON)
    reduced, rec = peel_degree3(oct_h)
    assert len(rec) == 0 and reduced.m == 6

    tet_h = convex_hull(UNIT_TET)
    reduced, rec = peel_degree3(tet_h)
    assert len(rec) == 0 and reduced.m == 4

    # a point just outside facet (1,2,3) of the unit tetrahedron
    cap = UNIT_TET + [P(Fraction(2, 5), Fraction(2, 5), Fraction(2, 5))]
    h = convex_hull(cap)
    assert skeleton_degrees(h)[4] == 3
    reduced, rec = peel_degree3(h)
    assert len(rec) == 1 and reduced.m == 4
    x, face = rec.peels[0]
    assert x == 0 and sorted(face) == [1, 2, 3]  # smallest degree-3 id goes first
    assert orient3d(*(cap[i] for i in face), cap[x]) > 0


@given(st.integers(0, 10**6))
def test_peel_replay_restores_exterior(seed):
    pts = random_points(30, seed, "ball")
    h = convex_hull(pts)
    reduced, rec = peel_degree3(h)
    assert reduced.m >= 4
    assert sorted(reduced.exterior + [x for x, _ in rec.peels]) == h.exterior
    check_invariants(reduced, complete=False)
    if reduced.m > 4:
        assert min(skeleton_degrees(reduced).values()) >= 4
