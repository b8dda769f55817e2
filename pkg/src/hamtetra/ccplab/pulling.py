"""Hamiltonian pulling tetrahedralizations of points in convex position.

Pulling from a hull vertex p cones every facet not containing p to p.  The
dual of that tetrahedralization is the hull's dual graph minus the face
formed by the facets around p, so a Hamiltonian path there is a
Hamiltonian path of the tetrahedralization.  Given a Hamiltonian cycle C of
the hull dual, a chord of C whose endpoints are closest along C cuts off a
face F whose removal leaves the rest of C as such a path.
"""
from __future__ import annotations

from typing import TYPE_CHECKING, List, Optional, Sequence, Tuple

from ..errors import InteriorPointsPresent, NotAFace
from ..geom import Point3
from ..graph import RotGraph, hull_dual, trace_faces
from ..hull import convex_hull
from ..mesh import EXTERIOR, TetMesh
from .search import find_ham_cycle, is_ham_cycle

if TYPE_CHECKING:
    from ..pipeline import HamCertificate

DEFAULT_BUDGET = 2_000_000


def pulling_face(g: RotGraph, cycle: Sequence[int]) -> Tuple[List[int], List[int]]:
    """Face F cut off by a closest chord of ``cycle`` and the path ``cycle - F``.

    Chords are ranked by distance along the cycle, ties by ascending
    ``(x, y)``.  When both arcs are equally short, the one leaving ``x``
    forward along the cycle is tried first.
    """
    if not is_ham_cycle(g.rot, cycle):
        raise ValueError("not a Hamiltonian cycle of the graph")
    n = len(cycle)
    pos = {x: i for i, x in enumerate(cycle)}
    best = None
    for x, y in g.edges():
        d = abs(pos[x] - pos[y])
        d = min(d, n - d)
        if d <= 1:
            continue
        if best is None or (d, x, y) < best:
            best = (d, x, y)
    if best is None:
        raise NotAFace("the cycle has no chord")
    d, x, y = best
    faces = {frozenset(f): f for f in trace_faces(g)}
    i = pos[x]
    for step in (1, -1):
        arc = [cycle[(i + step * j) % n] for j in range(d + 1)]
        if arc[-1] != y:
            continue
        face = faces.get(frozenset(arc))
        if face is not None and len(face) == len(arc):
            rest = [cycle[(i + step * j) % n] for j in range(d + 1, n)]
            return face, rest
    raise NotAFace(f"chord {x}-{y} and its short arc do not bound a face")


def pulling_tetrahedralization(
    points: Sequence[Point3], budget: Optional[int] = DEFAULT_BUDGET
) -> Optional[Tuple[TetMesh, "HamCertificate", int]]:
    """Pulling tetrahedralization with a Hamiltonian path certificate.

    Returns ``(mesh, certificate, p)`` with ``p`` the pulled vertex, or None
    when the hull dual has no Hamiltonian cycle within ``budget`` nodes.
    """
    from ..pipeline import HamCertificate

    pts = [p if isinstance(p, Point3) else Point3(*p) for p in points]
    h = convex_hull(pts)
    if h.interior:
        raise InteriorPointsPresent(f"{len(h.interior)} points are not hull vertices")
    mesh = TetMesh()
    for p in pts:
        mesh.add_vertex(p, EXTERIOR)
    if h.m == 4:
        (a, b, c) = h.facets[0]
        (p,) = set(h.exterior) - {a, b, c}
        tid = mesh.add_tet((p, a, b, c))
        return mesh, HamCertificate([tid], cycle=False), p
    dual = hull_dual(h)
    res = find_ham_cycle(dual, budget)
    if not res:
        return None
    face, path = pulling_face(dual, res.order)
    common = set(h.facets[face[0]])
    for f in face[1:]:
        common &= set(h.facets[f])
    (p,) = common
    tid_of = {}
    for i, (a, b, c) in enumerate(h.facets):
        if p not in (a, b, c):
            tid_of[i] = mesh.add_tet((p, a, b, c))
    return mesh, HamCertificate([tid_of[f] for f in path], cycle=False), p
