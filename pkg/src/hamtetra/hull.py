"""Exact 3D convex hull by incremental insertion with conflict lists.

Points are inserted in input order.  Each pending point is attached to one
facet it sees; when a facet is destroyed its pending points are re-tested
only against the facets that replace it, which is enough: a point seeing a
destroyed facet is either swallowed or sees one of the new facets.

Facets are stored counterclockwise as seen from outside, so
``orient3d(f0, f1, f2, q) < 0`` for every point ``q`` inside the hull.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Sequence, Set, Tuple

from .errors import GeneralPositionViolation, TooFewPoints
from .geom import Point3, centroid, orient3d, orient3d_value

Facet = Tuple[int, int, int]
Edge = Tuple[int, int]


def _canonical(f: Facet) -> Facet:
    """Rotate so the smallest id comes first (orientation preserved)."""
    a, b, c = f
    if a < b and a < c:
        return (a, b, c)
    if b < c:
        return (b, c, a)
    return (c, a, b)


@dataclass
class HullMesh:
    """Triangulated boundary of a convex hull over ``points``.

    ``exterior`` holds the hull vertices; ``interior`` holds every other
    input id (all strictly inside).
    """

    points: Sequence[Point3]
    facets: List[Facet]
    exterior: List[int]
    interior: List[int] = field(default_factory=list)

    def __post_init__(self):
        self.facets = sorted(_canonical(f) for f in self.facets)
        self.exterior = sorted(self.exterior)
        self.interior = sorted(self.interior)
        self.edge_facets: Dict[Edge, Tuple[int, int]] = {}
        half: Dict[Edge, int] = {}
        for i, (a, b, c) in enumerate(self.facets):
            for u, v in ((a, b), (b, c), (c, a)):
                half[(u, v)] = i
        for (u, v), i in half.items():
            if u < v:
                j = half.get((v, u))
                if j is None:
                    raise ValueError(f"hull edge {u}-{v} has only one facet")
                self.edge_facets[(u, v)] = (i, j)

    @property
    def m(self) -> int:
        return len(self.exterior)

    @property
    def edges(self) -> List[Edge]:
        return sorted(self.edge_facets)

    def facet_points(self, i: int) -> Tuple[Point3, Point3, Point3]:
        a, b, c = self.facets[i]
        return self.points[a], self.points[b], self.points[c]

    def volume6(self) -> Fraction:
        """Six times the enclosed volume, by coning from the vertex centroid."""
        ref = centroid(self.points[v] for v in self.exterior)
        return -sum(
            (orient3d_value(*self.facet_points(i), ref) for i in range(len(self.facets))),
            Fraction(0),
        )

    def sees(self, i: int, p: Point3) -> int:
        """Orientation of ``p`` against facet i: +1 outside, -1 inside."""
        return orient3d(*self.facet_points(i), p)


def _initial_simplex(P: Sequence[Point3]) -> Tuple[int, int, int, int]:
    n = len(P)
    i0 = 0
    i1 = next((i for i in range(1, n) if P[i] != P[i0]), None)
    if i1 is None:
        raise GeneralPositionViolation("all points coincide")
    d1 = P[i1] - P[i0]

    def collinear(i):
        d2 = P[i] - P[i0]
        return (
            d1.y * d2.z == d1.z * d2.y
            and d1.z * d2.x == d1.x * d2.z
            and d1.x * d2.y == d1.y * d2.x
        )

    i2 = next((i for i in range(i1 + 1, n) if not collinear(i)), None)
    if i2 is None:
        raise GeneralPositionViolation("all points are collinear")
    i3 = next((i for i in range(i2 + 1, n) if orient3d(P[i0], P[i1], P[i2], P[i]) != 0), None)
    if i3 is None:
        raise GeneralPositionViolation("all points are coplanar")
    return i0, i1, i2, i3


def convex_hull(points: Sequence[Point3]) -> HullMesh:
    """Hull facets plus the exterior/interior split of ``points``.

    Coplanarities that do not touch the final boundary are harmless and
    tolerated; a facet-adjacent coplanar vertex or an input point lying on
    the boundary without being a vertex raises GeneralPositionViolation.
    """
    n = len(points)
    if n < 4:
        raise TooFewPoints(f"need at least 4 points, got {n}")
    P = points

    facets: Dict[int, Facet] = {}
    owner: Dict[Edge, int] = {}
    outside: Dict[int, List[int]] = {}
    where: Dict[int, int] = {}
    borderline: Set[int] = set()
    next_fid = 0

    def add_facet(a, b, c):
        nonlocal next_fid
        fid = next_fid
        next_fid += 1
        facets[fid] = (a, b, c)
        owner[(a, b)] = owner[(b, c)] = owner[(c, a)] = fid
        outside[fid] = []
        return fid

    def side(fid, q):
        a, b, c = facets[fid]
        return orient3d(P[a], P[b], P[c], P[q])

    def assign(q, candidates):
        touching = False
        for fid in candidates:
            s = side(fid, q)
            if s > 0:
                outside[fid].append(q)
                where[q] = fid
                borderline.discard(q)
                return
            if s == 0:
                touching = True
        if touching:
            borderline.add(q)

    simplex = _initial_simplex(P)
    for i in range(4):
        a, b, c = (v for j, v in enumerate(simplex) if j != i)
        if orient3d(P[a], P[b], P[c], P[simplex[i]]) > 0:
            b, c = c, b
        add_facet(a, b, c)
    initial = list(facets)
    in_simplex = set(simplex)
    order = [q for q in range(n) if q not in in_simplex]
    for q in order:
        assign(q, initial)

    for p in order:
        start = where.pop(p, None)
        if start is None:
            continue
        visible = {start}
        stack = [start]
        horizon: List[Edge] = []
        while stack:
            fid = stack.pop()
            a, b, c = facets[fid]
            for u, v in ((a, b), (b, c), (c, a)):
                nb = owner[(v, u)]
                if nb in visible:
                    continue
                if side(nb, p) > 0:
                    visible.add(nb)
                    stack.append(nb)
                else:
                    horizon.append((u, v))
        orphans: List[int] = []
        old_vertices: Set[int] = set()
        for fid in visible:
            a, b, c = facets.pop(fid)
            old_vertices.update((a, b, c))
            for u, v in ((a, b), (b, c), (c, a)):
                if owner.get((u, v)) == fid:
                    del owner[(u, v)]
            orphans.extend(q for q in outside.pop(fid) if q != p)
        new = [add_facet(u, v, p) for u, v in horizon]
        for q in orphans:
            del where[q]
            assign(q, new)
        rim = {u for e in horizon for u in e}
        for v in old_vertices - rim:
            if any(side(fid, v) == 0 for fid in new):
                borderline.add(v)

    for (u, v), fid in owner.items():
        if u < v:
            other = facets[owner[(v, u)]]
            (apex,) = set(other) - {u, v}
            if side(fid, apex) >= 0:
                a, b, c = facets[fid]
                raise GeneralPositionViolation(
                    f"hull facets {a}, {b}, {c} and {other} are coplanar"
                )
    hull_vertices = sorted({v for f in facets.values() for v in f})
    hv = set(hull_vertices)
    for q in sorted(borderline - hv):
        if any(side(fid, q) >= 0 for fid in facets):
            raise GeneralPositionViolation(f"point {q} lies on the hull boundary")
    interior = [i for i in range(n) if i not in hv]
    return HullMesh(list(points), list(facets.values()), hull_vertices, interior)


def skeleton_degrees(h: HullMesh) -> Dict[int, int]:
    deg = {v: 0 for v in h.exterior}
    for u, v in h.edge_facets:
        deg[u] += 1
        deg[v] += 1
    return deg


@dataclass
class PeelRecord:
    """Degree-3 peels in removal order, plus the interior point ids."""

    peels: List[Tuple[int, Facet]] = field(default_factory=list)
    interior: List[int] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.peels)


def peel_degree3(h: HullMesh) -> Tuple[HullMesh, PeelRecord]:
    """Repeatedly strip hull vertices of skeleton degree 3.

    Removing such a vertex x with neighbors a, b, c replaces its three
    facets by the single facet abc, oriented outward (x sees it).  Vertices
    are taken smallest id first; peeling stops at a tetrahedron.
    """
    P = h.points
    star: Dict[int, Set[Facet]] = {v: set() for v in h.exterior}
    for f in h.facets:
        for v in f:
            star[v].add(f)
    alive = set(h.exterior)
    heap = [v for v in h.exterior if len(star[v]) == 3]
    heapq.heapify(heap)
    record = PeelRecord(interior=list(h.interior))
    while heap and len(alive) > 4:
        x = heapq.heappop(heap)
        if x not in alive or len(star[x]) != 3:
            continue
        old = list(star[x])
        a, b, c = sorted({v for f in old for v in f} - {x})
        s = orient3d(P[a], P[b], P[c], P[x])
        if s == 0:
            raise GeneralPositionViolation(f"peeled vertex {x} is coplanar with its neighbors")
        face = (a, b, c) if s > 0 else (a, c, b)
        for f in old:
            for v in f:
                star[v].discard(f)
        del star[x]
        alive.discard(x)
        for v in face:
            star[v].add(face)
        record.peels.append((x, face))
        for v in face:
            if len(star[v]) == 3:
                heapq.heappush(heap, v)
    facets = {f for fs in star.values() for f in fs}
    reduced = HullMesh(h.points, list(facets), sorted(alive), list(h.interior))
    return reduced, record
