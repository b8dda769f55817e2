"""Seeded random point sets, rounded to exact rationals with denominator 10^6."""
from __future__ import annotations

import math
import random
from fractions import Fraction
from typing import List

from .geom import Point3

SHAPES = ("ball", "sphere")
SCALE = 10**6


def _rational(v: float) -> Fraction:
    return Fraction(round(v * SCALE), SCALE)


def random_points(n: int, seed: int, shape: str = "ball") -> List[Point3]:
    """``n`` distinct points uniform in the unit ball or on the unit sphere."""
    if shape not in SHAPES:
        raise ValueError(f"shape must be one of {SHAPES}")
    rng = random.Random(seed)
    out: List[Point3] = []
    seen = set()
    while len(out) < n:
        if shape == "ball":
            v = [rng.uniform(-1.0, 1.0) for _ in range(3)]
            if sum(c * c for c in v) > 1.0:
                continue
        else:
            v = [rng.gauss(0.0, 1.0) for _ in range(3)]
            r = math.sqrt(sum(c * c for c in v))
            if r < 1e-9:
                continue
            v = [c / r for c in v]
        p = Point3(*(_rational(c) for c in v))
        if p not in seen:
            seen.add(p)
            out.append(p)
    return out
