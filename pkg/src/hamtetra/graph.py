"""Combinatorial graphs: mesh duals and embedded (rotation-system) graphs.

Graph text format::

    V E
    <neighbors of vertex 0 in rotation order>
    ...
    <neighbors of vertex V-1 in rotation order>

Lines starting with ``#`` are comments.  A comment ``# copy <id>`` labels
every following vertex line with ``<id>`` until the next such comment;
``# copy -`` switches labeling off again.
"""
from __future__ import annotations

import io
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import TYPE_CHECKING, Dict, Hashable, Iterable, List, Optional, Sequence, Tuple, Union

from .errors import FaceInconsistency, NonClosingTrace, ParseError
from .mesh import Face, TetMesh, tet_faces

if TYPE_CHECKING:
    from .hull import HullMesh


@dataclass
class DualGraph:
    """Face-adjacency graph of a tetrahedralization."""

    adj: Dict[int, List[int]]
    shared: Dict[Tuple[int, int], Face] = field(default_factory=dict)

    @property
    def vertices(self) -> List[int]:
        return sorted(self.adj)

    def edges(self) -> List[Tuple[int, int]]:
        return sorted(self.shared)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def face(self, u: int, v: int) -> Face:
        return self.shared[(min(u, v), max(u, v))]


def dual_of_mesh(mesh: TetMesh) -> DualGraph:
    owners: Dict[Face, List[int]] = {}
    for tid in sorted(mesh.tets):
        for k in tet_faces(mesh.tets[tid]):
            owners.setdefault(k, []).append(tid)
    adj: Dict[int, List[int]] = {tid: [] for tid in mesh.tets}
    shared: Dict[Tuple[int, int], Face] = {}
    for k, ts in owners.items():
        if len(ts) > 2:
            raise FaceInconsistency(f"face {k} is claimed by tetrahedra {ts}")
        if len(ts) == 2:
            a, b = ts
            adj[a].append(b)
            adj[b].append(a)
            shared[(min(a, b), max(a, b))] = k
    for v in adj.values():
        v.sort()
    return DualGraph(adj, shared)


class RotGraph:
    """Graph on vertices ``0..n-1`` with a cyclic neighbor order per vertex."""

    def __init__(self, rotation: Sequence[Sequence[int]], labels: Optional[Sequence[Hashable]] = None):
        self.rot: List[List[int]] = [list(r) for r in rotation]
        n = len(self.rot)
        for v, r in enumerate(self.rot):
            if len(set(r)) != len(r):
                raise ValueError(f"vertex {v} lists a neighbor twice")
            for w in r:
                if not 0 <= w < n or w == v:
                    raise ValueError(f"vertex {v} has invalid neighbor {w}")
        if labels is not None and len(labels) != n:
            raise ValueError("one label per vertex required")
        self.labels: Optional[List[Hashable]] = list(labels) if labels is not None else None

    @property
    def n(self) -> int:
        return len(self.rot)

    def __len__(self) -> int:
        return len(self.rot)

    def neighbors(self, v: int) -> List[int]:
        return self.rot[v]

    def degree(self, v: int) -> int:
        return len(self.rot[v])

    def edges(self) -> List[Tuple[int, int]]:
        return sorted({(min(u, v), max(u, v)) for u, r in enumerate(self.rot) for v in r})

    @property
    def num_edges(self) -> int:
        return len(self.edges())

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.rot[u]

    def is_cubic(self) -> bool:
        return all(len(r) == 3 for r in self.rot)

    def is_symmetric(self) -> bool:
        return all(u in self.rot[v] for u, r in enumerate(self.rot) for v in r)

    def mirrored(self) -> "RotGraph":
        return RotGraph([list(reversed(r)) for r in self.rot], self.labels)

    def adjacency(self) -> List[List[int]]:
        return [list(r) for r in self.rot]

    def __repr__(self):
        return f"RotGraph(n={self.n}, m={self.num_edges})"


def trace_faces(g: RotGraph) -> List[List[int]]:
    """Faces of the embedding, each as a cyclic vertex sequence.

    Every directed edge ``(u, v)`` lies on exactly one face; the face
    continues from ``v`` to the successor of ``u`` in the rotation at ``v``.
    """
    pos = [{w: i for i, w in enumerate(r)} for r in g.rot]
    seen = set()
    faces = []
    for u in range(g.n):
        for v in g.rot[u]:
            if (u, v) in seen:
                continue
            face = []
            a, b = u, v
            while (a, b) not in seen:
                seen.add((a, b))
                face.append(a)
                at_b = pos[b].get(a)
                if at_b is None:
                    raise NonClosingTrace(f"edge {a}-{b} is not listed at {b}")
                r = g.rot[b]
                a, b = b, r[(at_b + 1) % len(r)]
            if (a, b) != (u, v):
                raise NonClosingTrace(f"face walk from {u}->{v} did not close")
            faces.append(face)
    return faces


def euler_characteristic(g: RotGraph) -> int:
    return g.n - g.num_edges + len(trace_faces(g))


def is_planar_embedding(g: RotGraph) -> bool:
    try:
        return euler_characteristic(g) == 2
    except NonClosingTrace:
        return False


def _connected_without(adj: Sequence[Sequence[int]], removed: int) -> bool:
    n = len(adj)
    start = 0 if removed != 0 else 1
    seen = [False] * n
    seen[removed] = True
    seen[start] = True
    stack = [start]
    count = 1
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if not seen[w]:
                seen[w] = True
                count += 1
                stack.append(w)
    return count == n - 1


def _has_articulation(adj: Sequence[Sequence[int]], removed: int) -> bool:
    """True if ``adj`` minus ``removed`` has a cut vertex (iterative Tarjan)."""
    n = len(adj)
    root = 0 if removed != 0 else 1
    disc = [-1] * n
    low = [0] * n
    disc[removed] = -2
    timer = 0
    disc[root] = low[root] = timer
    timer += 1
    root_children = 0
    stack = [(root, -1, iter(adj[root]))]
    while stack:
        u, parent, it = stack[-1]
        advanced = False
        for w in it:
            if disc[w] == -2:
                continue
            if disc[w] == -1:
                disc[w] = low[w] = timer
                timer += 1
                if u == root:
                    root_children += 1
                stack.append((w, u, iter(adj[w])))
                advanced = True
                break
            if w != parent:
                low[u] = min(low[u], disc[w])
        if advanced:
            continue
        stack.pop()
        if stack:
            p = stack[-1][0]
            low[p] = min(low[p], low[u])
            if p != root and low[u] >= disc[p]:
                return True
    return root_children > 1


def is_three_connected(g: Union[RotGraph, Sequence[Sequence[int]]]) -> bool:
    """No vertex cut of size <= 2.

    Equivalent to exhaustive removal of all vertex pairs: for each vertex v
    the graph minus v must be connected and free of articulation points.
    """
    adj = g.rot if isinstance(g, RotGraph) else [list(r) for r in g]
    n = len(adj)
    if n < 4:
        return False
    for v in range(n):
        if not _connected_without(adj, v) or _has_articulation(adj, v):
            return False
    return True


def hull_dual(h: "HullMesh") -> RotGraph:
    """Cubic graph on the hull facets, rotation taken from facet orientation."""
    owner = {}
    for i, (a, b, c) in enumerate(h.facets):
        owner[(a, b)] = i
        owner[(b, c)] = i
        owner[(c, a)] = i
    rot = [[owner[(b, a)], owner[(c, b)], owner[(a, c)]] for (a, b, c) in h.facets]
    return RotGraph(rot)


_COPY_RE = re.compile(r"#\s*copy\s+(\S+)\s*$")


def parse_graph(text: str) -> RotGraph:
    header = None
    rows: List[List[int]] = []
    labels: List[Optional[str]] = []
    label: Optional[str] = None
    any_label = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            m = _COPY_RE.match(line)
            if m:
                label = None if m.group(1) == "-" else m.group(1)
                any_label = True
            continue
        try:
            nums = [int(tok) for tok in line.split()]
        except ValueError:
            raise ParseError(f"expected integers, got {line!r}", lineno) from None
        if header is None:
            if len(nums) != 2:
                raise ParseError("header must be 'V E'", lineno)
            header = (nums[0], nums[1], lineno)
            continue
        if len(rows) >= header[0]:
            raise ParseError("more vertex lines than declared", lineno)
        rows.append(nums)
        labels.append(label)
    if header is None:
        raise ParseError("empty graph file")
    n_decl, e_decl, hline = header
    if len(rows) != n_decl:
        raise ParseError(f"declared {n_decl} vertices, found {len(rows)}", hline)
    try:
        g = RotGraph(rows, [_label_value(x) for x in labels] if any_label else None)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    if not g.is_symmetric():
        raise ParseError("adjacency is not symmetric")
    if g.num_edges != e_decl:
        raise ParseError(f"declared {e_decl} edges, found {g.num_edges}", hline)
    return g


def _label_value(x):
    if x is None:
        return None
    try:
        return int(x)
    except ValueError:
        return x


def read_graph(path: Union[str, Path]) -> RotGraph:
    return parse_graph(Path(path).read_text())


def format_graph(g: RotGraph, comments: Iterable[str] = ()) -> str:
    out = io.StringIO()
    for c in comments:
        out.write(f"# {c}\n")
    out.write(f"{g.n} {g.num_edges}\n")
    current = None
    for v, r in enumerate(g.rot):
        if g.labels is not None and g.labels[v] != current:
            if current is not None or g.labels[v] is not None:
                out.write(f"# copy {'-' if g.labels[v] is None else g.labels[v]}\n")
            current = g.labels[v]
        out.write(" ".join(map(str, r)) + "\n")
    return out.getvalue()


def write_graph(g: RotGraph, path: Union[str, Path], comments: Iterable[str] = ()) -> None:
    Path(path).write_text(format_graph(g, comments))
