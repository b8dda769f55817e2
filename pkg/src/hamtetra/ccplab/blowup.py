"""Blow-up of cubic plane graphs and the constructions built on it.

Blowing up vertex ``u`` of G with a copy of H at its vertex ``v``:
delete ``v`` from H, add the path v1'-v2'-w-v3' with each v_i' joined to
the former neighbor v_i of ``v``, then delete ``u`` from G and join its
neighbors u1, u2, u3 to v1', w, v3'.  Every vertex stays at degree 3.

Rotations are kept so the result is again a plane graph: the copy of H is
mirrored and slotted into the corner of G at ``u`` picked by
``face_choice``.
"""
from __future__ import annotations

from importlib import resources
from typing import Dict, Hashable, List, Optional, Sequence, Tuple

from ..errors import NotCubic
from ..graph import RotGraph, parse_graph, trace_faces

ROLES = ("v1'", "v2'", "w", "v3'")


class EmbeddedCubic(RotGraph):
    """Cubic plane graph with optional per-vertex copy id and role.

    ``labels[x]`` is the copy of H that vertex x came from (None for
    vertices of the base graph); ``roles[x]`` names the four path vertices
    added by a blow-up and is None elsewhere.
    """

    def __init__(self, rotation, labels=None, roles=None):
        super().__init__(rotation, labels)
        if roles is not None and len(roles) != self.n:
            raise ValueError("one role per vertex required")
        self.roles: Optional[List[Optional[str]]] = list(roles) if roles is not None else None

    @classmethod
    def from_graph(cls, g: RotGraph) -> "EmbeddedCubic":
        return cls(g.rot, g.labels, getattr(g, "roles", None))

    def copy_ids(self) -> List[Hashable]:
        return sorted({c for c in (self.labels or []) if c is not None}, key=str)

    def members(self, copy) -> List[int]:
        return [x for x in range(self.n) if self.labels and self.labels[x] == copy]


def _require_cubic(g: RotGraph, name: str) -> None:
    bad = [v for v in range(g.n) if g.degree(v) != 3]
    if bad:
        raise NotCubic(f"{name} is not cubic: vertex {bad[0]} has degree {g.degree(bad[0])}")


def _blow_up(g: RotGraph, u: int, h: RotGraph, v: int, face_choice: int, copy) -> Tuple[EmbeddedCubic, Dict[int, int]]:
    _require_cubic(g, "g")
    _require_cubic(h, "h")
    k = face_choice % 3
    ru = g.rot[u]
    u1, u2, u3 = ru[(k + 1) % 3], ru[(k + 2) % 3], ru[k]
    v1, v2, v3 = h.rot[v]

    gmap: Dict[int, int] = {}
    for x in range(g.n):
        if x != u:
            gmap[x] = len(gmap)
    base = len(gmap)
    hmap: Dict[int, int] = {}
    for x in range(h.n):
        if x != v:
            hmap[x] = base + len(hmap)
    p1, p2, w, p3 = (base + len(hmap) + i for i in range(4))
    attach = {v1: p1, v2: p2, v3: p3}
    to_gadget = {u1: p1, u2: w, u3: p3}
    total = p3 + 1

    rot: List[List[int]] = [[] for _ in range(total)]
    for x, nx in gmap.items():
        rot[nx] = [to_gadget[x] if y == u else gmap[y] for y in g.rot[x]]
    for x, nx in hmap.items():
        # mirrored so H's orientation matches G's after being turned inside the face
        rot[nx] = [attach[x] if y == v else hmap[y] for y in reversed(h.rot[x])]
    rot[p1] = [hmap[v1], gmap[u1], p2]
    rot[p2] = [hmap[v2], p1, w]
    rot[w] = [p3, p2, gmap[u2]]
    rot[p3] = [hmap[v3], w, gmap[u3]]

    glab = g.labels or [None] * g.n
    groles = getattr(g, "roles", None) or [None] * g.n
    labels: List[Hashable] = [None] * total
    roles: List[Optional[str]] = [None] * total
    for x, nx in gmap.items():
        labels[nx], roles[nx] = glab[x], groles[x]
    for nx in list(hmap.values()) + [p1, p2, w, p3]:
        labels[nx] = copy
    for nx, r in zip((p1, p2, w, p3), ROLES):
        roles[nx] = r
    return EmbeddedCubic(rot, labels, roles), gmap


def blow_up(g: RotGraph, u: int, h: RotGraph, v: int, face_choice: int = 0, copy=None) -> EmbeddedCubic:
    """Replace ``u`` of ``g`` by a modified copy of ``h`` (see module docstring).

    ``face_choice`` in {0, 1, 2} selects the corner of ``g`` at ``u``
    between ``rot[u][k]`` and ``rot[u][k+1]``; the copy of ``h`` ends up in
    that face.  ``copy`` labels the new vertices (default: next free integer).
    Vertices of ``g`` keep their order, followed by the new ones.
    """
    if copy is None:
        used = [c for c in (g.labels or []) if isinstance(c, int)]
        copy = max(used) + 1 if used else 0
    return _blow_up(g, u, h, v, face_choice, copy)[0]


def k4() -> EmbeddedCubic:
    return EmbeddedCubic([[1, 2, 3], [0, 3, 2], [0, 1, 3], [0, 2, 1]])


def cube() -> EmbeddedCubic:
    # bottom 0-1-2-3, top 4-5-6-7 with i above i-4
    return EmbeddedCubic([
        [1, 4, 3], [2, 5, 0], [3, 6, 1], [0, 7, 2],
        [0, 5, 7], [1, 6, 4], [2, 7, 5], [3, 4, 6],
    ])


def load_gadget() -> EmbeddedCubic:
    """The shipped 38-vertex non-Hamiltonian cubic plane graph."""
    text = resources.files("hamtetra.data").joinpath("nonham38.txt").read_text()
    return EmbeddedCubic.from_graph(parse_graph(text))


def lower_bound_family(base: RotGraph, h: RotGraph, v: int = 0) -> EmbeddedCubic:
    """Blow up every vertex of ``base`` with a copy of ``h`` labeled by that vertex."""
    g = EmbeddedCubic(base.rot)
    alive = list(range(base.n))  # current id of each untouched base vertex
    for b in range(base.n):
        g, gmap = _blow_up(g, alive[b], h, v, 0, b)
        alive = [gmap.get(x, -1) if x >= 0 else -1 for x in alive]
    return g


def k4_counterexample(h: RotGraph, v: int = 0) -> EmbeddedCubic:
    """K4 with each vertex blown up by ``h``, the copies in four distinct faces.

    K4 vertex j sends its copy into the face missing vertex (j + 1) mod 4.
    Copy ids are the K4 vertex ids.
    """
    g = k4()
    alive = [0, 1, 2, 3]
    for j in range(4):
        cur = alive[j]
        missing = (j + 1) % 4

        def origin(y):
            lab = g.labels[y] if g.labels else None
            return lab if lab is not None else alive.index(y)

        r = g.rot[cur]
        choice = next(
            k for k in range(3) if missing not in (origin(r[k]), origin(r[(k + 1) % 3]))
        )
        g, gmap = _blow_up(g, cur, h, v, choice, j)
        alive = [gmap.get(x, -1) if x >= 0 else -1 for x in alive]
    return g


def inter_copy_edges(g: RotGraph) -> List[Tuple[int, int]]:
    """Edges whose endpoints carry different copy labels."""
    lab = g.labels or [None] * g.n
    return [(a, b) for a, b in g.edges() if lab[a] != lab[b]]


def components(n: int, edges: Sequence[Tuple[int, int]]) -> List[List[int]]:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    groups: Dict[int, List[int]] = {}
    for x in range(n):
        groups.setdefault(find(x), []).append(x)
    return sorted(groups.values())


def cycles_per_copy(g: RotGraph, cycles: Sequence[Sequence[int]]) -> Dict[Hashable, int]:
    """How many of ``cycles`` lie entirely inside each labeled copy."""
    lab = g.labels or [None] * g.n
    out: Dict[Hashable, int] = {c: 0 for c in lab if c is not None}
    for cyc in cycles:
        owners = {lab[x] for x in cyc}
        if len(owners) == 1:
            (c,) = owners
            if c is not None:
                out[c] += 1
    return out


def matching_cycles(g: RotGraph) -> List[List[int]]:
    """Cycles left after deleting a maximum (perfect) matching of a cubic graph."""
    from ..matching import perfect_matching

    matched = perfect_matching(g).edge_set()
    rest = [[w for w in g.rot[x] if frozenset((x, w)) not in matched] for x in range(g.n)]
    seen = [False] * g.n
    cycles = []
    for s in range(g.n):
        if seen[s]:
            continue
        cyc, prev, cur = [s], s, rest[s][0]
        seen[s] = True
        while cur != s:
            cyc.append(cur)
            seen[cur] = True
            a, b = rest[cur]
            prev, cur = cur, (a if a != prev else b)
        cycles.append(cyc)
    return cycles


def face_labels(g: RotGraph) -> List[Tuple[List[int], set]]:
    return [(f, {g.labels[x] if g.labels else None for x in f}) for f in trace_faces(g)]
