"""Independent checks of a tetrahedralization and its Hamiltonian certificate.

The mesh checks rebuild everything from the raw tetrahedron list:

* every tetrahedron is positively oriented;
* every face is shared by at most two tetrahedra, whose apexes lie on
  opposite sides, and the unshared faces are exactly the hull facets;
* the volumes add up to the hull volume (exact rationals);
* every input point is a mesh vertex and every vertex is used.

Together these imply a proper tetrahedralization of the hull.  The
``oracle`` level adds two brute-force checks that do not rely on that
argument: no vertex lies inside a tetrahedron or on a face or edge it does
not belong to, and (for small meshes) no two tetrahedra overlap, tested by
exact separating axes.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import TYPE_CHECKING, Dict, List, Optional, Sequence, Tuple

from .geom import Point3, orient3d
from .hull import convex_hull
from .mesh import STEINER, TetMesh, face_key, tet_faces

if TYPE_CHECKING:
    from .pipeline import HamCertificate

LEVELS = ("off", "fast", "oracle")
SAT_LIMIT = 200


FLAGS = ("orientation", "face_consistency", "volume", "containment", "certificate", "oracle")


@dataclass
class VerifyReport:
    """Outcome flags (None = not checked), counters and failure details."""

    level: str
    flags: Dict[str, Optional[bool]] = field(default_factory=lambda: {k: None for k in FLAGS})
    tets: int = 0
    steiner_points: int = 0
    boundary_faces: int = 0
    failures: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(v is not False for v in self.flags.values())

    @property
    def first_failure(self) -> Optional[str]:
        return self.failures[0] if self.failures else None

    def record(self, flag: str, passed: bool, detail: str = "") -> None:
        self.flags[flag] = (self.flags[flag] is not False) and passed
        if not passed:
            self.failures.append(f"{flag}: {detail}" if detail else flag)

    def to_text(self) -> str:
        lines = [f"level: {self.level}", f"ok: {str(self.ok).lower()}"]
        for k in FLAGS:
            v = self.flags[k]
            lines.append(f"{k}_ok: {'skipped' if v is None else str(v).lower()}")
        lines += [
            f"tets: {self.tets}",
            f"steiner_points: {self.steiner_points}",
            f"boundary_faces: {self.boundary_faces}",
        ]
        if self.failures:
            lines.append(f"first_failure: {self.failures[0]}")
        return "\n".join(lines) + "\n"


def verify_mesh(
    points: Sequence[Point3],
    mesh: TetMesh,
    level: str = "fast",
    cert: Optional["HamCertificate"] = None,
) -> VerifyReport:
    if level not in LEVELS:
        raise ValueError(f"unknown verification level {level!r}")
    rep = VerifyReport(level)
    P = mesh.points
    tets = [mesh.tets[t] for t in sorted(mesh.tets)]
    rep.tets = len(tets)
    rep.steiner_points = mesh.steiner_count()
    if level == "off":
        return rep

    bad = [t for t in tets if orient3d(*(P[i] for i in t)) <= 0]
    rep.record("orientation", not bad, f"{len(bad)} non-positive tetrahedra, first {bad[:1]}")

    owners: Dict[Tuple[int, int, int], List[Tuple[int, ...]]] = {}
    for t in tets:
        for k in tet_faces(t):
            owners.setdefault(k, []).append(t)
    over = sorted(k for k, ts in owners.items() if len(ts) > 2)
    rep.record("face_consistency", not over, f"face {over[:1]} has 3+ tetrahedra")
    same_side = []
    for k in sorted(owners):
        ts = owners[k]
        if len(ts) == 2:
            a, b, c = (P[i] for i in k)
            s = [orient3d(a, b, c, P[(set(t) - set(k)).pop()]) for t in ts]
            if s[0] * s[1] >= 0:
                same_side.append(k)
    rep.record("face_consistency", not same_side, f"apexes not separated by face {same_side[:1]}")

    hull = convex_hull(list(points))
    boundary = {k for k, ts in owners.items() if len(ts) == 1}
    rep.boundary_faces = len(boundary)
    facets = {face_key(*f) for f in hull.facets}
    rep.record(
        "face_consistency",
        boundary == facets,
        f"{len(boundary - facets)} extra, {len(facets - boundary)} missing boundary faces",
    )

    total = sum((_vol6(t, P) for t in tets), Fraction(0))
    hv = hull.volume6()
    rep.record("volume", total == hv, f"tetrahedra {total} vs hull {hv}")

    n = len(points)
    missing = [i for i in range(n) if i >= len(P) or P[i] != points[i]]
    rep.record("containment", not missing, f"input points not mesh vertices: {missing[:5]}")
    used = {v for t in tets for v in t}
    unused = [v for v in range(len(P)) if v not in used]
    rep.record("containment", not unused, f"unused vertices: {unused[:5]}")
    outside = [
        v for v in range(len(P))
        if mesh.origins[v] == STEINER and any(hull.sees(i, P[v]) >= 0 for i in range(len(hull.facets)))
    ]
    rep.record("containment", not outside, f"Steiner points not strictly inside: {outside[:5]}")

    if level == "oracle":
        stray = _stray_vertices(P, tets)
        rep.record("containment", not stray, f"vertex {stray[:1]} lies in a tetrahedron")
        if len(tets) <= SAT_LIMIT:
            hits = overlapping_pairs(P, tets)
            rep.record("oracle", not hits, f"overlapping tetrahedra {hits[:1]}")

    if cert is not None:
        chk = check_certificate(mesh, cert.order, cert.cycle)
        rep.record("certificate", chk.ok, chk.message)
    return rep


def _vol6(t: Sequence[int], P: Sequence[Point3]) -> Fraction:
    a, b, c, d = (P[i] for i in t)
    u, v, w = b - a, c - a, d - a
    return (
        u.x * (v.y * w.z - v.z * w.y)
        - u.y * (v.x * w.z - v.z * w.x)
        + u.z * (v.x * w.y - v.y * w.x)
    )


def _stray_vertices(P: Sequence[Point3], tets) -> List[Tuple[int, Tuple[int, ...]]]:
    """Vertices lying in a closed tetrahedron they are not a corner of."""
    used = sorted({v for t in tets for v in t})
    out = []
    for t in tets:
        a, b, c, d = (P[i] for i in t)
        ts = set(t)
        for v in used:
            if v in ts:
                continue
            q = P[v]
            if (
                orient3d(q, b, c, d) >= 0
                and orient3d(a, q, c, d) >= 0
                and orient3d(a, b, q, d) >= 0
                and orient3d(a, b, c, q) >= 0
            ):
                out.append((v, t))
    return out


def _cross(u, v):
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])


def _sub(a, b):
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2])


_EDGES = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
_FACES = ((0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3))


class _Solid:
    __slots__ = ("pts", "normals", "edges", "box")

    def __init__(self, pts):
        self.pts = pts
        self.normals = [_cross(_sub(pts[j], pts[i]), _sub(pts[k], pts[i])) for i, j, k in _FACES]
        self.edges = [_sub(pts[j], pts[i]) for i, j in _EDGES]
        self.box = [(min(p[a] for p in pts), max(p[a] for p in pts)) for a in range(3)]


def _separated(n, A, B) -> bool:
    if n == (0, 0, 0):
        return False
    pa = [p[0] * n[0] + p[1] * n[1] + p[2] * n[2] for p in A.pts]
    pb = [p[0] * n[0] + p[1] * n[1] + p[2] * n[2] for p in B.pts]
    return max(pa) <= min(pb) or max(pb) <= min(pa)


def _overlap(A: _Solid, B: _Solid) -> bool:
    for n in A.normals:
        if _separated(n, A, B):
            return False
    for n in B.normals:
        if _separated(n, A, B):
            return False
    for u in A.edges:
        for v in B.edges:
            if _separated(_cross(u, v), A, B):
                return False
    return True


def _integer_coords(pts: Sequence[Point3]):
    den = 1
    for p in pts:
        for c in (p.x, p.y, p.z):
            den = lcm(den, c.denominator)
    return [tuple(int(c * den) for c in (p.x, p.y, p.z)) for p in pts]


def interiors_overlap(A: Sequence[Point3], B: Sequence[Point3]) -> bool:
    """Exact separating-axis test for two non-degenerate tetrahedra.

    Candidate axes are the face normals of both and the cross products of
    every edge pair.  Touching along a face, edge or vertex is not overlap.
    """
    ints = _integer_coords(list(A) + list(B))
    return _overlap(_Solid(ints[:4]), _Solid(ints[4:]))


def overlapping_pairs(P: Sequence[Point3], tets) -> List[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    ints = _integer_coords(P)
    solids = [_Solid([ints[v] for v in t]) for t in tets]
    out = []
    for i in range(len(tets)):
        bi = solids[i].box
        for j in range(i + 1, len(tets)):
            bj = solids[j].box
            if any(bi[k][1] <= bj[k][0] or bj[k][1] <= bi[k][0] for k in range(3)):
                continue
            if _overlap(solids[i], solids[j]):
                out.append((tets[i], tets[j]))
    return out


@dataclass
class CertificateCheck:
    ok: bool
    index: Optional[int] = None
    message: str = ""

    def __bool__(self) -> bool:
        return self.ok


def check_certificate(mesh: TetMesh, order: Sequence[int], cycle: bool) -> CertificateCheck:
    """Permutation of the live tetrahedra, consecutive entries sharing a face.

    ``index`` is the first offending position (for an adjacency failure,
    the position of the left tetrahedron of the pair).
    """
    seen = set()
    for i, t in enumerate(order):
        if t not in mesh.tets:
            return CertificateCheck(False, i, f"position {i}: {t} is not a live tetrahedron")
        if t in seen:
            return CertificateCheck(False, i, f"position {i}: {t} is visited twice")
        seen.add(t)
    if len(seen) != len(mesh.tets):
        return CertificateCheck(False, len(order), f"visits {len(seen)} of {len(mesh.tets)} tetrahedra")
    for i in range(len(order) - 1):
        if not mesh.adjacent(order[i], order[i + 1]):
            return CertificateCheck(False, i, f"position {i}: {order[i]} and {order[i + 1]} share no face")
    if cycle and len(order) > 1:
        if len(order) < 3 or not mesh.adjacent(order[-1], order[0]):
            return CertificateCheck(False, len(order) - 1, "cycle does not close")
    return CertificateCheck(True)


def verify_certificate(mesh: TetMesh, cert) -> CertificateCheck:
    """Accepts a HamCertificate or anything with ``order`` and ``cycle``."""
    return check_certificate(mesh, cert.order, cert.cycle)
