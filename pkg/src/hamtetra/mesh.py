"""Tetrahedral mesh with a face-adjacency index."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .errors import FaceInconsistency, GeneralPositionViolation
from .geom import Point3, Tetra, orient3d, tetra_volume6

Face = Tuple[int, int, int]

EXTERIOR = "exterior"
INTERIOR = "interior"
STEINER = "steiner"
ORIGINS = (EXTERIOR, INTERIOR, STEINER)


def face_key(a: int, b: int, c: int) -> Face:
    return tuple(sorted((a, b, c)))  # type: ignore[return-value]


def tet_faces(t: Sequence[int]) -> List[Face]:
    """The four faces of ``t``; entry i is the face opposite ``t[i]``."""
    a, b, c, d = t
    return [face_key(b, c, d), face_key(a, c, d), face_key(a, b, d), face_key(a, b, c)]


@dataclass
class TetMesh:
    """Vertex store plus live tetrahedra.

    Tetrahedron ids come from a monotone counter and are never reused, so
    a certificate or log entry always names one specific tetrahedron.
    """

    points: List[Point3] = field(default_factory=list)
    origins: List[str] = field(default_factory=list)
    tets: Dict[int, Tetra] = field(default_factory=dict)
    faces: Dict[Face, List[int]] = field(default_factory=dict)
    next_id: int = 0

    def add_vertex(self, p: Point3, origin: str) -> int:
        if origin not in ORIGINS:
            raise ValueError(f"unknown vertex origin {origin!r}")
        self.points.append(p)
        self.origins.append(origin)
        return len(self.points) - 1

    def add_tet(self, t: Sequence[int], tid: Optional[int] = None) -> int:
        t = tuple(t)
        if len(set(t)) != 4:
            raise ValueError(f"tetrahedron {t} repeats a vertex")
        s = orient3d(*(self.points[i] for i in t))
        if s == 0:
            raise GeneralPositionViolation(f"flat tetrahedron {t}")
        if s < 0:
            raise ValueError(f"tetrahedron {t} is negatively oriented")
        keys = tet_faces(t)
        for k in keys:
            if len(self.faces.get(k, ())) >= 2:
                raise FaceInconsistency(f"face {k} would be shared by three tetrahedra")
        if tid is None:
            tid = self.next_id
        elif tid in self.tets or tid < 0:
            raise ValueError(f"tetrahedron id {tid} is already used")
        self.next_id = max(self.next_id, tid + 1)
        self.tets[tid] = t  # type: ignore[assignment]
        for k in keys:
            self.faces.setdefault(k, []).append(tid)
        return tid

    def remove_tet(self, tid: int) -> Tetra:
        t = self.tets.pop(tid)
        for k in tet_faces(t):
            owners = self.faces[k]
            owners.remove(tid)
            if not owners:
                del self.faces[k]
        return t

    def __len__(self) -> int:
        return len(self.tets)

    def __contains__(self, tid: int) -> bool:
        return tid in self.tets

    def neighbors(self, tid: int) -> Iterator[Tuple[int, Face]]:
        for k in tet_faces(self.tets[tid]):
            for other in self.faces[k]:
                if other != tid:
                    yield other, k

    def neighbor_across(self, tid: int, face: Face) -> Optional[int]:
        for other in self.faces.get(face, ()):
            if other != tid:
                return other
        return None

    def shared_face(self, t1: int, t2: int) -> Optional[Face]:
        common = set(self.tets[t1]) & set(self.tets[t2])
        if len(common) == 3 and t1 != t2:
            return face_key(*common)
        return None

    def adjacent(self, t1: int, t2: int) -> bool:
        return t1 != t2 and len(set(self.tets[t1]).intersection(self.tets[t2])) == 3

    def apex(self, tid: int, face: Sequence[int]) -> int:
        """Vertex of ``tid`` opposite ``face``."""
        (v,) = set(self.tets[tid]) - set(face)
        return v

    def boundary_faces(self) -> List[Face]:
        return sorted(k for k, owners in self.faces.items() if len(owners) == 1)

    def interior_faces(self) -> List[Face]:
        return sorted(k for k, owners in self.faces.items() if len(owners) == 2)

    def volume6(self) -> Fraction:
        return sum((tetra_volume6(t, self.points) for t in self.tets.values()), Fraction(0))

    def steiner_count(self) -> int:
        return sum(1 for o in self.origins if o == STEINER)

    def copy(self) -> "TetMesh":
        return TetMesh(
            list(self.points),
            list(self.origins),
            dict(self.tets),
            {k: list(v) for k, v in self.faces.items()},
            self.next_id,
        )


def shares_face(t1: Sequence[int], t2: Sequence[int]) -> bool:
    return len(set(t1).intersection(t2)) == 3


def all_faces(tets: Sequence[Sequence[int]]) -> List[Face]:
    return sorted({face_key(*f) for t in tets for f in combinations(t, 3)})
