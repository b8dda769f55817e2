"""Perfect matchings in bridgeless cubic graphs via Edmonds' blossom algorithm."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Dict, Hashable, List, Mapping, Sequence, Tuple, Union

from .errors import NoPerfectMatching
from .graph import DualGraph, RotGraph

GraphLike = Union[DualGraph, RotGraph, Mapping[Hashable, Sequence[Hashable]], Sequence[Sequence[int]]]


@dataclass(frozen=True)
class Matching:
    pairs: Tuple[Tuple[Hashable, Hashable], ...]

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def mate(self) -> Dict[Hashable, Hashable]:
        out = {}
        for u, v in self.pairs:
            out[u] = v
            out[v] = u
        return out

    def edge_set(self):
        return {frozenset(p) for p in self.pairs}


def _to_index(g: GraphLike):
    if isinstance(g, DualGraph):
        g = g.adj
    elif isinstance(g, RotGraph):
        g = {v: r for v, r in enumerate(g.rot)}
    elif not isinstance(g, Mapping):
        g = {v: r for v, r in enumerate(g)}
    labels = sorted(g)
    index = {v: i for i, v in enumerate(labels)}
    adj = [sorted(index[w] for w in g[v]) for v in labels]
    return labels, adj


def maximum_matching(adj: Sequence[Sequence[int]]) -> List[int]:
    """Edmonds' algorithm on vertices ``0..n-1``; returns the mate array (-1 = free).

    A greedy pass in ascending order seeds the matching, then one
    alternating-tree search per free vertex, contracting odd cycles by
    relabeling their base.  Deterministic for a fixed adjacency order.
    """
    n = len(adj)
    match = [-1] * n
    for v in range(n):
        if match[v] == -1:
            for w in adj[v]:
                if match[w] == -1 and w != v:
                    match[v], match[w] = w, v
                    break

    parent = [-1] * n
    base = list(range(n))
    used = [False] * n

    def lca(a: int, b: int) -> int:
        seen = [False] * n
        while True:
            a = base[a]
            seen[a] = True
            if match[a] == -1:
                break
            a = parent[match[a]]
        while True:
            b = base[b]
            if seen[b]:
                return b
            b = parent[match[b]]

    def mark_path(v: int, b: int, child: int, blossom: List[bool]) -> None:
        while base[v] != b:
            blossom[base[v]] = blossom[base[match[v]]] = True
            parent[v] = child
            child = match[v]
            v = parent[match[v]]

    def find_path(root: int) -> int:
        for i in range(n):
            parent[i] = -1
            base[i] = i
            used[i] = False
        used[root] = True
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for to in adj[v]:
                if base[v] == base[to] or match[v] == to:
                    continue
                if to == root or (match[to] != -1 and parent[match[to]] != -1):
                    cur = lca(v, to)
                    blossom = [False] * n
                    mark_path(v, cur, to, blossom)
                    mark_path(to, cur, v, blossom)
                    for i in range(n):
                        if blossom[base[i]]:
                            base[i] = cur
                            if not used[i]:
                                used[i] = True
                                queue.append(i)
                elif parent[to] == -1:
                    parent[to] = v
                    if match[to] == -1:
                        return to
                    used[match[to]] = True
                    queue.append(match[to])
        return -1

    for root in range(n):
        if match[root] != -1:
            continue
        v = find_path(root)
        while v != -1:
            pv = parent[v]
            nxt = match[pv]
            match[v], match[pv] = pv, v
            v = nxt
    return match


def perfect_matching(g: GraphLike) -> Matching:
    """A perfect matching of ``g`` (Petersen: exists for bridgeless cubic graphs).

    Raises NoPerfectMatching when the maximum matching leaves a vertex free.
    """
    labels, adj = _to_index(g)
    match = maximum_matching(adj)
    free = [labels[v] for v in range(len(adj)) if match[v] == -1]
    if free:
        raise NoPerfectMatching(f"{len(free)} vertices unmatched, e.g. {free[:5]}")
    pairs = tuple((labels[v], labels[match[v]]) for v in range(len(adj)) if v < match[v])
    check_perfect(adj_from(labels, adj), pairs)
    return Matching(pairs)


def adj_from(labels, adj) -> Dict[Hashable, set]:
    return {labels[v]: {labels[w] for w in r} for v, r in enumerate(adj)}


def check_perfect(adj: Mapping[Hashable, Sequence[Hashable]], pairs) -> None:
    """Structural validation: edges of the graph, disjoint, covering."""
    covered = set()
    for u, v in pairs:
        if v not in adj[u]:
            raise NoPerfectMatching(f"pair {u}-{v} is not an edge")
        if u in covered or v in covered:
            raise NoPerfectMatching(f"vertex matched twice in pair {u}-{v}")
        covered.update((u, v))
    if len(covered) != len(adj):
        raise NoPerfectMatching("matching does not cover every vertex")
