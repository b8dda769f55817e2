"""Exact rational geometry kernel.

Every predicate is decided exactly.  Points carry a homogeneous integer
representation ``(X, Y, Z, W)`` with ``W > 0`` so that orientation signs can
be computed with plain integer arithmetic instead of ``Fraction`` objects.
"""
from __future__ import annotations

import enum
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence, Tuple, Union

from .errors import GeneralPositionViolation

Rational = Union[Fraction, int, str, float]

# vertex ids of a positively oriented tetrahedron
Tetra = Tuple[int, int, int, int]


def as_rational(value: Rational) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return Fraction(value.strip())
    return Fraction(value)


class Point3:
    """Immutable point with exact rational coordinates."""

    __slots__ = ("x", "y", "z", "_hom")

    def __init__(self, x: Rational, y: Rational, z: Rational):
        x, y, z = as_rational(x), as_rational(y), as_rational(z)
        w = lcm(x.denominator, y.denominator, z.denominator)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "z", z)
        object.__setattr__(
            self,
            "_hom",
            (
                x.numerator * (w // x.denominator),
                y.numerator * (w // y.denominator),
                z.numerator * (w // z.denominator),
                w,
            ),
        )

    def __setattr__(self, name, value):
        raise AttributeError("Point3 is immutable")

    def __iter__(self):
        yield self.x
        yield self.y
        yield self.z

    def __eq__(self, other):
        if not isinstance(other, Point3):
            return NotImplemented
        return self._hom == other._hom

    def __hash__(self):
        return hash(self._hom)

    def __repr__(self):
        return f"Point3({self.x}, {self.y}, {self.z})"

    def __add__(self, other: "Point3") -> "Point3":
        return Point3(self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other: "Point3") -> "Point3":
        return Point3(self.x - other.x, self.y - other.y, self.z - other.z)

    def scaled(self, k: Rational) -> "Point3":
        k = as_rational(k)
        return Point3(self.x * k, self.y * k, self.z * k)

    @property
    def homogeneous(self) -> Tuple[int, int, int, int]:
        return self._hom

    def to_float(self) -> Tuple[float, float, float]:
        return (float(self.x), float(self.y), float(self.z))


def _det4_hom(a, b, c, d) -> int:
    ax, ay, az, aw = a
    bx, by, bz, bw = b
    cx, cy, cz, cw = c
    dx, dy, dz, dw = d
    # Laplace expansion on the first two rows against the last two.
    s0 = ax * by - ay * bx
    s1 = ax * bz - az * bx
    s2 = ax * bw - aw * bx
    s3 = ay * bz - az * by
    s4 = ay * bw - aw * by
    s5 = az * bw - aw * bz
    c5 = cz * dw - cw * dz
    c4 = cy * dw - cw * dy
    c3 = cy * dz - cz * dy
    c2 = cx * dw - cw * dx
    c1 = cx * dz - cz * dx
    c0 = cx * dy - cy * dx
    return s0 * c5 - s1 * c4 + s2 * c3 + s3 * c2 - s4 * c1 + s5 * c0


def _orient_int(a: Point3, b: Point3, c: Point3, d: Point3) -> int:
    """An integer whose sign is the orientation sign."""
    ax, ay, az, aw = a._hom
    bx, by, bz, bw = b._hom
    cx, cy, cz, cw = c._hom
    dx, dy, dz, dw = d._hom
    if aw == bw == cw == dw:
        bx -= ax
        by -= ay
        bz -= az
        cx -= ax
        cy -= ay
        cz -= az
        dx -= ax
        dy -= ay
        dz -= az
        return bx * (cy * dz - cz * dy) - by * (cx * dz - cz * dx) + bz * (cx * dy - cy * dx)
    # det[b-a; c-a; d-a] = -det4([x y z 1] rows); the W factors are positive.
    return -_det4_hom(a._hom, b._hom, c._hom, d._hom)


def orient3d(a: Point3, b: Point3, c: Point3, d: Point3) -> int:
    """Sign of det(b - a, c - a, d - a).

    +1 when ``d`` sees the triangle ``(a, b, c)`` counterclockwise.
    """
    v = _orient_int(a, b, c, d)
    return (v > 0) - (v < 0)


def orient3d_value(a: Point3, b: Point3, c: Point3, d: Point3) -> Fraction:
    bx, by, bz = b.x - a.x, b.y - a.y, b.z - a.z
    cx, cy, cz = c.x - a.x, c.y - a.y, c.z - a.z
    dx, dy, dz = d.x - a.x, d.y - a.y, d.z - a.z
    return bx * (cy * dz - cz * dy) - by * (cx * dz - cz * dx) + bz * (cx * dy - cy * dx)


class Containment(enum.Enum):
    STRICT_INTERIOR = "strict-interior"
    BOUNDARY = "boundary"
    EXTERIOR = "exterior"


def face_signs(t: Sequence[int], p: Point3, vertices: Sequence[Point3]) -> Tuple[int, int, int, int]:
    """Orientation of ``t`` with vertex i replaced by ``p``, for i = 0..3.

    For a positive tetrahedron a positive entry means ``p`` is on the inner
    side of the face opposite vertex i.
    """
    a, b, c, d = (vertices[i] for i in t)
    return (
        orient3d(p, b, c, d),
        orient3d(a, p, c, d),
        orient3d(a, b, p, d),
        orient3d(a, b, c, p),
    )


def tetra_contains(t: Sequence[int], p: Point3, vertices: Sequence[Point3]) -> Containment:
    signs = face_signs(t, p, vertices)
    if min(signs) < 0:
        return Containment.EXTERIOR
    if min(signs) == 0:
        return Containment.BOUNDARY
    return Containment.STRICT_INTERIOR


def centroid(points: Iterable[Point3]) -> Point3:
    pts = list(points)
    if not pts:
        raise ValueError("centroid of an empty point list")
    k = len(pts)
    return Point3(
        sum((p.x for p in pts), Fraction(0)) / k,
        sum((p.y for p in pts), Fraction(0)) / k,
        sum((p.z for p in pts), Fraction(0)) / k,
    )


def tetra_volume6(t: Sequence[int], vertices: Sequence[Point3]) -> Fraction:
    """Six times the signed volume; positive for a valid tetrahedron."""
    a, b, c, d = (vertices[i] for i in t)
    return orient3d_value(a, b, c, d)


def positive_tetra(v0: int, v1: int, v2: int, v3: int, vertices: Sequence[Point3]) -> Tetra:
    """Reorder four vertex ids into positive orientation.

    Raises GeneralPositionViolation for a flat tetrahedron.
    """
    s = orient3d(vertices[v0], vertices[v1], vertices[v2], vertices[v3])
    if s > 0:
        return (v0, v1, v2, v3)
    if s < 0:
        return (v0, v1, v3, v2)
    raise GeneralPositionViolation(f"vertices {v0}, {v1}, {v2}, {v3} are coplanar")
