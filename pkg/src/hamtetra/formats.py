"""Text formats for point sets and meshes.

Points::

    n
    x y z        (n lines; decimal or p/q literals, parsed exactly)

OFF files are accepted too (``OFF`` header, only the vertex block is read).

Meshes are written in sections::

    [vertices]
    <id> <x> <y> <z> <origin>
    [tets]
    <id> <a> <b> <c> <d>
    [ham]
    cycle|path
    <tet ids in order>
    [stats]
    <key>: <value>
"""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from .errors import ParseError
from .geom import Point3, as_rational
from .mesh import ORIGINS, TetMesh, tet_faces

PathLike = Union[str, Path]


def _coord(tok: str, lineno: int):
    try:
        return as_rational(tok)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad coordinate {tok!r}", lineno) from None


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def parse_points(text: str) -> List[Point3]:
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("empty point file")
    if lines[0][1].upper().startswith("OFF"):
        return _parse_off(lines)
    lineno, head = lines[0]
    try:
        n = int(head)
    except ValueError:
        raise ParseError(f"expected the point count, got {head!r}", lineno) from None
    body = lines[1:]
    if len(body) != n:
        where = body[n][0] if len(body) > n else lineno
        raise ParseError(f"declared {n} points, found {len(body)}", where)
    return [_point(lineno, line) for lineno, line in body]


def _point(lineno: int, line: str) -> Point3:
    toks = line.split()
    if len(toks) != 3:
        raise ParseError(f"expected 3 coordinates, got {len(toks)}", lineno)
    return Point3(*(_coord(t, lineno) for t in toks))


def _parse_off(lines) -> List[Point3]:
    lineno, head = lines[0]
    rest = head[3:].split()
    body = lines[1:]
    if not rest:
        if not body:
            raise ParseError("OFF file without counts", lineno)
        lineno, counts = body[0]
        rest = counts.split()
        body = body[1:]
    try:
        nv = int(rest[0])
    except (ValueError, IndexError):
        raise ParseError("bad OFF counts line", lineno) from None
    if len(body) < nv:
        raise ParseError(f"OFF declares {nv} vertices, found {len(body)}", lineno)
    return [_point(ln, " ".join(line.split()[:3])) for ln, line in body[:nv]]


def read_points(path: PathLike) -> List[Point3]:
    return parse_points(Path(path).read_text())


def format_points(points: List[Point3]) -> str:
    out = [str(len(points))]
    out += [f"{p.x} {p.y} {p.z}" for p in points]
    return "\n".join(out) + "\n"


@dataclass
class MeshFile:
    mesh: TetMesh
    order: Optional[List[int]] = None
    cycle: bool = False
    stats: Dict[str, str] = field(default_factory=dict)


def format_mesh(mesh: TetMesh, order=None, cycle: bool = False, stats: Optional[Dict[str, object]] = None) -> str:
    out = ["[vertices]"]
    for i, (p, o) in enumerate(zip(mesh.points, mesh.origins)):
        out.append(f"{i} {p.x} {p.y} {p.z} {o}")
    out.append("[tets]")
    for tid in sorted(mesh.tets):
        out.append(f"{tid} " + " ".join(map(str, mesh.tets[tid])))
    if order is not None:
        out.append("[ham]")
        out.append("cycle" if cycle else "path")
        out.append(" ".join(map(str, order)))
    if stats:
        out.append("[stats]")
        out += [f"{k}: {v}" for k, v in stats.items()]
    return "\n".join(out) + "\n"


def parse_mesh(text: str) -> MeshFile:
    """Read a mesh file without validating geometry; verification is separate."""
    section = None
    points: List[Point3] = []
    origins: List[str] = []
    tets: Dict[int, Tuple[int, int, int, int]] = {}
    ham: List[Tuple[int, str]] = []
    stats: Dict[str, str] = {}
    for lineno, line in _content_lines(text):
        if line.startswith("[") and line.endswith("]"):
            section = line[1:-1].strip()
            if section not in ("vertices", "tets", "ham", "stats"):
                raise ParseError(f"unknown section [{section}]", lineno)
            continue
        toks = line.split()
        if section == "vertices":
            if len(toks) != 5:
                raise ParseError("vertex line needs id x y z origin", lineno)
            if int(toks[0]) != len(points):
                raise ParseError(f"vertex ids must be consecutive, got {toks[0]}", lineno)
            if toks[4] not in ORIGINS:
                raise ParseError(f"unknown origin {toks[4]!r}", lineno)
            points.append(Point3(*(_coord(t, lineno) for t in toks[1:4])))
            origins.append(toks[4])
        elif section == "tets":
            try:
                ids = [int(t) for t in toks]
            except ValueError:
                raise ParseError("tetrahedron line needs 5 integers", lineno) from None
            if len(ids) != 5:
                raise ParseError("tetrahedron line needs 5 integers", lineno)
            if ids[0] in tets:
                raise ParseError(f"duplicate tetrahedron id {ids[0]}", lineno)
            if any(not 0 <= v < len(points) for v in ids[1:]):
                raise ParseError("tetrahedron refers to an unknown vertex", lineno)
            tets[ids[0]] = tuple(ids[1:])  # type: ignore[assignment]
        elif section == "ham":
            ham.append((lineno, line))
        elif section == "stats":
            key, sep, value = line.partition(":")
            if not sep:
                raise ParseError("stats line needs 'key: value'", lineno)
            stats[key.strip()] = value.strip()
        else:
            raise ParseError("content outside any section", lineno)
    mesh = TetMesh(points, origins)
    for tid, t in tets.items():
        mesh.tets[tid] = t
        for k in tet_faces(t):
            mesh.faces.setdefault(k, []).append(tid)
    mesh.next_id = max(tets, default=-1) + 1
    result = MeshFile(mesh, stats=stats)
    if ham:
        lineno, tag = ham[0]
        if tag not in ("cycle", "path"):
            raise ParseError("[ham] must start with 'cycle' or 'path'", lineno)
        result.cycle = tag == "cycle"
        try:
            result.order = [int(t) for _, line in ham[1:] for t in line.split()]
        except ValueError:
            raise ParseError("[ham] order must be integers", ham[1][0]) from None
    return result


def read_mesh(path: PathLike) -> MeshFile:
    return parse_mesh(Path(path).read_text())
