"""Hamiltonian tetrahedralization with at most floor((m-2)/2) Steiner points.

Outline of :func:`hamiltonian_tetrahedralization`:

1. hull of the input, split into exterior and interior points;
2. peel hull vertices of skeleton degree 3 (down to a tetrahedron at most);
3. fan the remaining hull from a center point p0 (the first Steiner point),
   so the dual graph is cubic and bridgeless;
4. drop a perfect matching from the dual: the rest is a union of cycles;
5. merge cycles pairwise, each merge adding one Steiner point that splits
   two face-adjacent tetrahedra of different cycles into six;
6. put back the peeled vertices (reverse order) and then the interior
   points, splicing the new tetrahedra into the Hamiltonian cycle.

Interior points still waiting for step 6 are kept in per-tetrahedron
buckets and redistributed after every mutation, so location is cheap and
Steiner points can be steered away from them.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import (
    GeneralPositionViolation,
    LocationFailure,
    NoConnectingFace,
    SpliceFailure,
    TooFewPoints,
)
from .geom import Point3, centroid, orient3d
from .graph import dual_of_mesh
from .hull import HullMesh, PeelRecord, convex_hull, peel_degree3
from .matching import perfect_matching
from .mesh import EXTERIOR, INTERIOR, STEINER, Face, TetMesh, face_key, tet_faces

log = logging.getLogger(__name__)

INSIDE = "inside"
ON_FACE = "boundary"
OUTSIDE = "outside"


@dataclass
class CycleState:
    """Vertex-disjoint dual cycles covering every live tetrahedron."""

    cycles: Dict[int, List[int]]
    member: Dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        if not self.member:
            self.member = {t: cid for cid, cyc in self.cycles.items() for t in cyc}

    def __len__(self) -> int:
        return len(self.cycles)

    def lengths(self) -> List[int]:
        return [len(self.cycles[c]) for c in sorted(self.cycles)]


@dataclass
class HamCertificate:
    """Ordered tetrahedron ids; consecutive entries share a face."""

    order: List[int]
    cycle: bool

    @property
    def kind(self) -> str:
        return "cycle" if self.cycle else "path"

    def __len__(self) -> int:
        return len(self.order)


@dataclass
class Stats:
    n: int = 0
    m: int = 0
    m_prime: int = 0
    peels: int = 0
    base_case: bool = False
    reduced_m: int = 0
    initial_cycles: int = 0
    cycle_lengths: List[int] = field(default_factory=list)
    joins: int = 0
    steiner_count: int = 0
    findings: List[str] = field(default_factory=list)

    @property
    def steiner_bound(self) -> int:
        return (self.m - 2) // 2

    @property
    def partition_bound(self) -> int:
        return (2 * self.reduced_m - 4) // 4


# ---------------------------------------------------------------- location


def _signs(t: Sequence[int], q: Point3, point_of) -> Tuple[int, int, int, int]:
    a, b, c, d = (point_of(i) for i in t)
    return (orient3d(q, b, c, d), orient3d(a, q, c, d), orient3d(a, b, q, d), orient3d(a, b, c, q))


def _classify(q: Point3, cands: Sequence[Sequence[int]], point_of) -> Tuple[str, int]:
    """Which candidate tetrahedron holds ``q`` strictly.

    Returns ``(INSIDE, i)``, ``(ON_FACE, i)`` when ``q`` lies on a face shared
    by two candidates, or ``(OUTSIDE, -1)`` (which includes lying on the outer
    boundary of the candidates' union).
    """
    touched: List[Tuple[int, Tuple[int, int, int, int]]] = []
    for i, t in enumerate(cands):
        s = _signs(t, q, point_of)
        lo = min(s)
        if lo > 0:
            return INSIDE, i
        if lo == 0:
            touched.append((i, s))
    if touched:
        count: Dict[Face, int] = {}
        for t in cands:
            for k in tet_faces(t):
                count[k] = count.get(k, 0) + 1
        for i, s in touched:
            faces = tet_faces(cands[i])
            for j in range(4):
                if s[j] == 0 and count[faces[j]] > 1:
                    return ON_FACE, i
    return OUTSIDE, -1


def locate(mesh: TetMesh, q: Point3, start: Optional[int] = None) -> Tuple[str, Optional[int]]:
    """Visibility walk from ``start``; falls back to a scan if the walk loops."""
    P = mesh.points
    if not mesh.tets:
        return OUTSIDE, None
    cur = start if start in mesh.tets else min(mesh.tets)
    seen = set()
    step = 0
    while cur not in seen:
        seen.add(cur)
        t = mesh.tets[cur]
        s = _signs(t, q, P.__getitem__)
        if min(s) > 0:
            return INSIDE, cur
        faces = tet_faces(t)
        nxt = None
        for j in range(4):
            k = (j + step) % 4
            if s[k] < 0:
                nxt = mesh.neighbor_across(cur, faces[k])
                if nxt is None:
                    # beyond a boundary face of a convex mesh
                    return OUTSIDE, None
                break
        if nxt is None:
            return ON_FACE, cur
        cur = nxt
        step += 1
    return _scan(mesh, q)


def _scan(mesh: TetMesh, q: Point3) -> Tuple[str, Optional[int]]:
    on = None
    for tid in sorted(mesh.tets):
        s = _signs(mesh.tets[tid], q, mesh.points.__getitem__)
        if min(s) > 0:
            return INSIDE, tid
        if min(s) == 0 and on is None:
            on = tid
    if on is not None:
        return ON_FACE, on
    return OUTSIDE, None


class PendingPoints:
    """Input points not yet inserted, bucketed by the tetrahedron holding them."""

    def __init__(self):
        self.bucket: Dict[int, List[int]] = {}
        self.where: Dict[int, int] = {}
        self.outside: List[int] = []

    def __len__(self) -> int:
        return len(self.where) + len(self.outside)

    def put(self, vid: int, tid: int) -> None:
        self.where[vid] = tid
        self.bucket.setdefault(tid, []).append(vid)

    def take(self, tids: Iterable[int]) -> List[int]:
        out = []
        for t in tids:
            for v in self.bucket.pop(t, ()):
                del self.where[v]
                out.append(v)
        return sorted(out)

    def inside(self, tids: Iterable[int]) -> List[int]:
        return sorted(v for t in tids for v in self.bucket.get(t, ()))

    def discard(self, vid: int) -> None:
        tid = self.where.pop(vid, None)
        if tid is not None:
            self.bucket[tid].remove(vid)
            if not self.bucket[tid]:
                del self.bucket[tid]


def _replace(
    mesh: TetMesh,
    old: Sequence[int],
    new: Sequence[Sequence[int]],
    pending: Optional[PendingPoints],
    grow: bool = False,
) -> List[int]:
    """Swap tetrahedra ``old`` for ``new`` (same region, or larger if ``grow``).

    Pending points are reassigned before anything is mutated, so a point
    landing on a new internal face aborts cleanly.
    """
    moves: List[Tuple[int, int]] = []
    absorbed: List[int] = []
    if pending is not None:
        P = mesh.points
        for v in pending.inside(old):
            status, i = _classify(P[v], new, P.__getitem__)
            if status != INSIDE:
                raise GeneralPositionViolation(
                    f"point {v} lies on a face of the retetrahedralized region"
                )
            moves.append((v, i))
        if grow:
            for v in pending.outside:
                status, i = _classify(P[v], new, P.__getitem__)
                if status == ON_FACE:
                    raise GeneralPositionViolation(f"point {v} lies on an internal face")
                if status == INSIDE:
                    moves.append((v, i))
                    absorbed.append(v)
        pending.take(old)
        if absorbed:
            gone = set(absorbed)
            pending.outside = [v for v in pending.outside if v not in gone]
    for t in old:
        mesh.remove_tet(t)
    tids = [mesh.add_tet(t) for t in new]
    if pending is not None:
        for v, i in moves:
            pending.put(v, tids[i])
    return tids


# ------------------------------------------------------------------ splice


def _find_splice(left, right, new, adjacent, middle=None) -> Optional[List[int]]:
    """Order ``new`` (and optionally a fixed path ``middle``, either way round)
    between ``left`` and ``right`` so consecutive entries are adjacent.

    ``left``/``right`` may be None for an open path end.
    """
    options = [] if middle is None else [list(middle), list(reversed(middle))]
    total = len(new)

    def rec(seq, last, used, mid_done):
        if len(used) == total and (middle is None or mid_done):
            if right is None or adjacent(last, right):
                return seq
            return None
        for t in new:
            if t not in used and (last is None or adjacent(last, t)):
                used.add(t)
                r = rec(seq + [t], t, used, mid_done)
                used.discard(t)
                if r is not None:
                    return r
        if middle is not None and not mid_done:
            for path in options:
                if last is None or adjacent(last, path[0]):
                    r = rec(seq + path, path[-1], used, True)
                    if r is not None:
                        return r
        return None

    return rec([], left, set(), False)


def _splice_certificate(mesh: TetMesh, cert: HamCertificate, old: int, new: List[int]) -> None:
    order = cert.order
    i = order.index(old)
    n = len(order)
    if cert.cycle:
        left, right = order[i - 1], order[(i + 1) % n]
    else:
        left = order[i - 1] if i > 0 else None
        right = order[i + 1] if i + 1 < n else None
    seq = _find_splice(left, right, new, mesh.adjacent)
    if seq is None:
        raise SpliceFailure(f"no ordering of {new} fits between {left} and {right}")
    order[i:i + 1] = seq
    if not cert.cycle and len(order) >= 3 and mesh.adjacent(order[0], order[-1]):
        cert.cycle = True


# --------------------------------------------------------------- operations


def place_center(h: HullMesh, avoid: Sequence[Point3] = ()) -> Point3:
    """Interior point for the fan, by default the centroid of the hull vertices.

    The point must see every facet strictly, and no point of ``avoid`` may
    sit on an internal face of the resulting fan; otherwise it is nudged
    along a fixed sequence of directions with geometrically shrinking steps.
    """
    P = h.points
    base = centroid(P[v] for v in h.exterior)
    if _center_ok(h, base, avoid):
        return base
    xs = [p.x for p in (P[v] for v in h.exterior)]
    scale = (max(xs) - min(xs)) or Fraction(1)
    directions = [(1, 2, 3), (3, -1, 2), (-2, 3, 1), (1, -3, -2), (2, 1, -3)]
    step = scale / 16
    for _ in range(64):
        for d in directions:
            cand = base + Point3(*d).scaled(step)
            if _center_ok(h, cand, avoid):
                return cand
        step /= 2
    raise GeneralPositionViolation("could not place the fan center")


def _center_ok(h: HullMesh, c: Point3, avoid: Sequence[Point3]) -> bool:
    for i in range(len(h.facets)):
        if h.sees(i, c) >= 0:
            return False
    if not avoid:
        return True
    mesh = TetMesh(list(h.points), [EXTERIOR] * len(h.points))
    cid = mesh.add_vertex(c, STEINER)
    for a, b, d in h.facets:
        mesh.add_tet((cid, a, b, d))
    last = None
    for q in avoid:
        status, tid = locate(mesh, q, last)
        if status == ON_FACE:
            return False
        last = tid
    return True


def fan_tetrahedralize(h: HullMesh, p0: Point3) -> TetMesh:
    """One tetrahedron per hull facet, all sharing ``p0``.

    Vertex ids of the mesh equal the input point ids; ``p0`` is appended last
    and flagged as a Steiner point.
    """
    for i in range(len(h.facets)):
        if h.sees(i, p0) >= 0:
            raise GeneralPositionViolation("fan center is not strictly inside the hull")
    mesh = _vertex_store(h)
    cid = mesh.add_vertex(p0, STEINER)
    for a, b, c in h.facets:
        # outward facet seen from inside is clockwise, so the center goes first
        mesh.add_tet((cid, a, b, c))
    return mesh


def _vertex_store(h: HullMesh) -> TetMesh:
    interior = set(h.interior)
    mesh = TetMesh()
    for i, p in enumerate(h.points):
        mesh.add_vertex(p, INTERIOR if i in interior else EXTERIOR)
    return mesh


def initial_cycle_partition(mesh: TetMesh) -> CycleState:
    """Cycles left after removing a perfect matching from the cubic dual."""
    dual = dual_of_mesh(mesh)
    matched = perfect_matching(dual).edge_set()
    rest = {v: sorted(w for w in nb if frozenset((v, w)) not in matched) for v, nb in dual.adj.items()}
    for v, nb in rest.items():
        if len(nb) != 2:
            raise AssertionError(f"dual minus matching is not 2-regular at {v}")
    cycles: Dict[int, List[int]] = {}
    seen = set()
    for s in sorted(rest):
        if s in seen:
            continue
        cyc = [s]
        seen.add(s)
        prev, cur = s, rest[s][0]
        while cur != s:
            cyc.append(cur)
            seen.add(cur)
            a, b = rest[cur]
            prev, cur = cur, (a if a != prev else b)
        cycles[len(cycles)] = cyc
    return CycleState(cycles)


def place_steiner(
    mesh: TetMesh, tau1: int, tau2: int, face: Sequence[int], avoid: Sequence[int] = ()
) -> Point3:
    """Steiner point inside ``tau1`` for joining it with ``tau2`` across ``face``.

    Moves from the face centroid toward the apex of ``tau1``: start at a
    quarter of the way and halve until all six replacement tetrahedra are
    positive and every vertex id in ``avoid`` falls strictly inside one of
    them.  If some avoided point sits in a plane containing that whole
    segment, later attempts start from other interior points of the face.
    """
    P = mesh.points
    F = face_key(*face)
    apex = mesh.apex(tau1, F)
    opposite = mesh.apex(tau2, F)
    f = [P[v] for v in F]
    a = P[apex]
    t1, t2 = mesh.tets[tau1], mesh.tets[tau2]
    weights = [(1, 1, 1), (2, 1, 1), (1, 2, 1), (1, 1, 2), (3, 2, 1), (1, 3, 2), (2, 1, 3)]
    for wi, w in enumerate(weights):
        tot = sum(w)
        c = Point3(
            sum((wk * fk.x for wk, fk in zip(w, f)), Fraction(0)) / tot,
            sum((wk * fk.y for wk, fk in zip(w, f)), Fraction(0)) / tot,
            sum((wk * fk.z for wk, fk in zip(w, f)), Fraction(0)) / tot,
        )
        t = Fraction(1, 4)
        for _ in range(60 if wi == 0 else 24):
            p = c + (a - c).scaled(t)
            new = _join_tets(t1, t2, F, -1)
            point_of = lambda i, p=p: p if i == -1 else P[i]
            if _all_positive(new, point_of) and all(
                _classify(P[v], new, point_of)[0] == INSIDE for v in avoid
            ):
                return p
            t /= 2
    raise GeneralPositionViolation(
        f"no Steiner position joins {tau1} and {tau2} (apexes {apex}, {opposite})"
    )


def _join_tets(t1: Sequence[int], t2: Sequence[int], F: Sequence[int], pid: int) -> List[Tuple[int, ...]]:
    """Both tetrahedra with each face vertex in turn replaced by ``pid``."""
    out = []
    for t in (t1, t2):
        for v in F:
            out.append(tuple(pid if x == v else x for x in t))
    return out


def _all_positive(tets, point_of) -> bool:
    return all(orient3d(*(point_of(i) for i in t)) > 0 for t in tets)


def join_cycles(
    mesh: TetMesh,
    cs: CycleState,
    tau1: int,
    tau2: int,
    face: Sequence[int],
    pending: Optional[PendingPoints] = None,
) -> List[int]:
    """Merge the cycles through ``tau1`` and ``tau2`` with one Steiner point."""
    F = face_key(*face)
    c1, c2 = cs.member[tau1], cs.member[tau2]
    if c1 == c2:
        raise ValueError("tetrahedra already lie on the same cycle")
    avoid = pending.inside((tau1, tau2)) if pending is not None else []
    p = place_steiner(mesh, tau1, tau2, F, avoid)
    pid = mesh.add_vertex(p, STEINER)
    new_tets = _join_tets(mesh.tets[tau1], mesh.tets[tau2], F, pid)
    cyc1, cyc2 = cs.cycles[c1], cs.cycles[c2]
    i1, i2 = cyc1.index(tau1), cyc2.index(tau2)
    path1 = cyc1[i1 + 1:] + cyc1[:i1]
    path2 = cyc2[i2 + 1:] + cyc2[:i2]
    new = _replace(mesh, (tau1, tau2), new_tets, pending)
    seq = _find_splice(path1[-1], path1[0], new, mesh.adjacent, middle=path2)
    if seq is None:
        raise SpliceFailure(f"cannot splice join of {tau1} and {tau2}")
    keep, drop = min(c1, c2), max(c1, c2)
    merged = path1 + seq
    del cs.cycles[drop]
    cs.cycles[keep] = merged
    for t in (tau1, tau2):
        del cs.member[t]
    for t in merged:
        cs.member[t] = keep
    return new


def join_all_cycles(
    mesh: TetMesh, cs: CycleState, pending: Optional[PendingPoints] = None
) -> Tuple[TetMesh, CycleState, int]:
    """Join cycles until one remains; returns the number of Steiner points added.

    Faces are examined in ascending vertex-triple order.  A single pass is
    enough: faces created by a join lie inside the merged cycle, and cycles
    only ever merge, so a face skipped once never becomes a connector.
    """
    joins = 0
    for key in sorted(mesh.faces):
        if len(cs.cycles) <= 1:
            break
        owners = mesh.faces.get(key)
        if owners is None or len(owners) != 2:
            continue
        a, b = owners
        if cs.member[a] == cs.member[b]:
            continue
        tau1, tau2 = min(a, b), max(a, b)
        join_cycles(mesh, cs, tau1, tau2, key, pending)
        joins += 1
    if len(cs.cycles) > 1:
        raise NoConnectingFace(f"{len(cs.cycles)} cycles remain with no connecting face")
    return mesh, cs, joins


def reinsert_degree3(
    mesh: TetMesh,
    cert: HamCertificate,
    entry: Tuple[int, Sequence[int]],
    pending: Optional[PendingPoints] = None,
) -> Tuple[TetMesh, HamCertificate]:
    """Put back a peeled hull vertex: ``entry = (x, face)`` from a PeelRecord.

    The tetrahedron on ``face`` and the cap ``face + x`` are replaced by the
    three tetrahedra joining ``x`` to the other faces of the former.
    """
    x, face = entry
    F = face_key(*face)
    owners = mesh.faces.get(F, [])
    if len(owners) != 1:
        raise LocationFailure(f"face {F} is not a boundary face of the mesh")
    (tau1,) = owners
    t = mesh.tets[tau1]
    new_tets = [tuple(x if v == w else v for v in t) for w in F]
    P = mesh.points
    for nt in new_tets:
        if orient3d(*(P[i] for i in nt)) <= 0:
            raise GeneralPositionViolation(f"reinserting {x} gives a non-positive tetrahedron {nt}")
    new = _replace(mesh, (tau1,), new_tets, pending, grow=True)
    _splice_certificate(mesh, cert, tau1, new)
    return mesh, cert


def reinsert_interior(
    mesh: TetMesh,
    cert: HamCertificate,
    x: int,
    tid: Optional[int] = None,
    pending: Optional[PendingPoints] = None,
) -> Tuple[TetMesh, HamCertificate]:
    """Split the tetrahedron strictly containing vertex ``x`` into four."""
    q = mesh.points[x]
    if tid is None:
        status, tid = _scan(mesh, q)
        if status != INSIDE:
            raise LocationFailure(f"point {x} is not strictly inside any tetrahedron ({status})")
    elif min(_signs(mesh.tets[tid], q, mesh.points.__getitem__)) <= 0:
        raise LocationFailure(f"point {x} is not strictly inside tetrahedron {tid}")
    t = mesh.tets[tid]
    new_tets = [tuple(x if v == w else v for v in t) for w in t]
    if pending is not None:
        pending.discard(x)
    new = _replace(mesh, (tid,), new_tets, pending)
    _splice_certificate(mesh, cert, tid, new)
    return mesh, cert


# ---------------------------------------------------------------- pipeline

Observer = Callable[[str, TetMesh, HamCertificate], None]


def _as_points(points: Sequence) -> List[Point3]:
    return [p if isinstance(p, Point3) else Point3(*p) for p in points]


def hamiltonian_tetrahedralization(
    points: Sequence, observer: Optional[Observer] = None
) -> Tuple[TetMesh, HamCertificate, Stats]:
    """Tetrahedralize ``points`` plus a few interior Steiner points so the
    dual graph has a Hamiltonian cycle (a path for tiny meshes).

    ``observer(stage, mesh, cert)`` is called after every reinsertion step
    and once at the end of the join phase.
    """
    pts = _as_points(points)
    if len(pts) < 4:
        raise TooFewPoints(f"need at least 4 points, got {len(pts)}")
    if len(set(pts)) != len(pts):
        raise GeneralPositionViolation("duplicate input points")
    hull = convex_hull(pts)
    stats = Stats(n=len(pts), m=hull.m, m_prime=len(hull.interior))
    reduced, record = peel_degree3(hull)
    stats.peels = len(record)
    stats.reduced_m = reduced.m
    interior_pts = [pts[i] for i in record.interior]

    if reduced.m == 4:
        stats.base_case = True
        mesh = _vertex_store(hull)
        (f0,) = reduced.facets[:1]
        (apex,) = set(reduced.exterior) - set(f0)
        tid = mesh.add_tet((apex,) + tuple(f0))
        cert = HamCertificate([tid], cycle=False)
    else:
        p0 = place_center(reduced, interior_pts)
        mesh = fan_tetrahedralize(reduced, p0)
        cs = initial_cycle_partition(mesh)
        stats.initial_cycles = len(cs)
        stats.cycle_lengths = cs.lengths()
        short = [n for n in stats.cycle_lengths if n < 4]
        if short:
            msg = f"initial partition has cycles shorter than 4: {short}"
            log.warning(msg)
            stats.findings.append(msg)
        if len(cs) > stats.partition_bound:
            msg = f"{len(cs)} initial cycles exceed floor((2m-4)/4) = {stats.partition_bound}"
            log.warning(msg)
            stats.findings.append(msg)
        pending = _bucket(mesh, record.interior)
        mesh, cs, joins = join_all_cycles(mesh, cs, pending)
        stats.joins = joins
        (cyc,) = cs.cycles.values()
        cert = HamCertificate(list(cyc), cycle=True)
        if observer:
            observer("join", mesh, cert)
        return _reinsert_all(mesh, cert, record, pending, stats, observer)

    pending = _bucket(mesh, record.interior)
    return _reinsert_all(mesh, cert, record, pending, stats, observer)


def _bucket(mesh: TetMesh, ids: Sequence[int]) -> PendingPoints:
    pending = PendingPoints()
    last = None
    for v in ids:
        status, tid = locate(mesh, mesh.points[v], last)
        if status == INSIDE:
            pending.put(v, tid)
            last = tid
        elif status == OUTSIDE:
            pending.outside.append(v)
        else:
            raise GeneralPositionViolation(f"point {v} lies on a face of the initial mesh")
    return pending


def _reinsert_all(mesh, cert, record: PeelRecord, pending: PendingPoints, stats: Stats, observer):
    for entry in reversed(record.peels):
        reinsert_degree3(mesh, cert, entry, pending)
        if observer:
            observer("degree3", mesh, cert)
    if pending.outside:
        raise LocationFailure(f"points {pending.outside[:5]} ended outside the mesh")
    for x in record.interior:
        reinsert_interior(mesh, cert, x, pending.where[x], pending)
        if observer:
            observer("interior", mesh, cert)
    stats.steiner_count = mesh.steiner_count()
    return mesh, cert, stats
