"""Backtracking Hamiltonian cycle / path search with forced-edge propagation.

Each edge is undecided, in, or out.  Propagation rules:

* a vertex with two ``in`` edges excludes all its other edges;
* a vertex with exactly two non-``out`` edges forces both in;
* an edge that would close a cycle before all vertices are covered is out.

The search is exhaustive unless a node budget stops it first, so a
``none`` result is a proof that no Hamiltonian cycle exists.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple, Union

from ..graph import RotGraph

FOUND = "found"
NONE = "none"
BUDGET = "budget-exhausted"


@dataclass
class SearchResult:
    status: str
    order: Optional[List[int]]
    nodes: int

    def __bool__(self) -> bool:
        return self.status == FOUND

    def describe(self) -> str:
        if self.status == FOUND:
            return "cycle: " + " ".join(map(str, self.order))
        if self.status == NONE:
            return "none (exhaustive)"
        return "budget-exhausted"


class _Budget(Exception):
    pass


class _Contradiction(Exception):
    pass


def _adjacency(g: Union[RotGraph, Sequence[Sequence[int]]]) -> List[List[int]]:
    if isinstance(g, RotGraph):
        return g.adjacency()
    return [list(r) for r in g]


class _Search:
    def __init__(self, adj: List[List[int]], budget: Optional[int]):
        self.n = len(adj)
        self.ends: List[Tuple[int, int]] = []
        self.eid: Dict[Tuple[int, int], int] = {}
        self.inc: List[List[int]] = [[] for _ in adj]
        for u, r in enumerate(adj):
            for v in r:
                if u < v:
                    e = len(self.ends)
                    self.ends.append((u, v))
                    self.eid[(u, v)] = self.eid[(v, u)] = e
                    self.inc[u].append(e)
                    self.inc[v].append(e)
        self.budget = budget
        self.nodes = 0

    # state = [edge status list, in-degree, available degree, path other end, in-edge count]

    def _set_in(self, s, e, queue):
        st, nin, other = s[0], s[1], s[3]
        if st[e] == 1:
            return
        if st[e] == -1:
            raise _Contradiction
        u, v = self.ends[e]
        if nin[u] >= 2 or nin[v] >= 2:
            raise _Contradiction
        a, b = other[u], other[v]
        closing = a == v
        if closing and s[4] != self.n - 1:
            raise _Contradiction
        st[e] = 1
        nin[u] += 1
        nin[v] += 1
        s[4] += 1
        if not closing:
            other[a] = b
            other[b] = a
            if s[4] < self.n - 1:
                e2 = self.eid.get((a, b))
                if e2 is not None and st[e2] == 0:
                    self._set_out(s, e2, queue)
        queue.append(u)
        queue.append(v)

    def _set_out(self, s, e, queue):
        st, nav = s[0], s[2]
        if st[e] == -1:
            return
        if st[e] == 1:
            raise _Contradiction
        st[e] = -1
        u, v = self.ends[e]
        nav[u] -= 1
        nav[v] -= 1
        queue.append(u)
        queue.append(v)

    def _propagate(self, s, queue):
        st, nin, nav = s[0], s[1], s[2]
        while queue:
            x = queue.pop()
            if nin[x] == 2:
                if nav[x] > 2:
                    for e in self.inc[x]:
                        if st[e] == 0:
                            self._set_out(s, e, queue)
            elif nav[x] < 2:
                raise _Contradiction
            elif nav[x] == 2:
                for e in self.inc[x]:
                    if st[e] == 0:
                        self._set_in(s, e, queue)

    def _choose(self, s) -> Optional[int]:
        st, nin, nav = s[0], s[1], s[2]
        best = None
        best_key = None
        for x in range(self.n):
            if nin[x] == 2:
                continue
            key = (0 if nin[x] == 1 else 1, nav[x] - nin[x], x)
            if best_key is None or key < best_key:
                best, best_key = x, key
        if best is None:
            return None
        for e in self.inc[best]:
            if st[e] == 0:
                return e
        raise _Contradiction  # unreachable after propagation

    def _recurse(self, s):
        self.nodes += 1
        if self.budget is not None and self.nodes > self.budget:
            raise _Budget
        if s[4] == self.n:
            return s
        e = self._choose(s)
        if e is None:
            return None
        for value in (1, -1):
            t = [list(s[0]), list(s[1]), list(s[2]), list(s[3]), s[4]]
            queue: List[int] = []
            try:
                if value == 1:
                    self._set_in(t, e, queue)
                else:
                    self._set_out(t, e, queue)
                self._propagate(t, queue)
            except _Contradiction:
                continue
            found = self._recurse(t)
            if found is not None:
                return found
        return None

    def run(self) -> SearchResult:
        n = self.n
        if n < 3:
            return SearchResult(NONE, None, 0)
        s = [
            [0] * len(self.ends),
            [0] * n,
            [len(r) for r in self.inc],
            list(range(n)),
            0,
        ]
        queue = list(range(n))
        try:
            try:
                self._propagate(s, queue)
            except _Contradiction:
                return SearchResult(NONE, None, 1)
            final = self._recurse(s)
        except _Budget:
            return SearchResult(BUDGET, None, self.nodes)
        if final is None:
            return SearchResult(NONE, None, self.nodes)
        return SearchResult(FOUND, self._cycle_order(final[0]), self.nodes)

    def _cycle_order(self, st) -> List[int]:
        nxt: List[List[int]] = [[] for _ in range(self.n)]
        for e, flag in enumerate(st):
            if flag == 1:
                u, v = self.ends[e]
                nxt[u].append(v)
                nxt[v].append(u)
        order = [0]
        prev, cur = -1, 0
        while True:
            a, b = nxt[cur]
            step = a if a != prev else b
            if step == 0:
                break
            order.append(step)
            prev, cur = cur, step
        return order


def find_ham_cycle(g: Union[RotGraph, Sequence[Sequence[int]]], budget: Optional[int] = None) -> SearchResult:
    """Hamiltonian cycle of ``g`` (vertex order starting at 0), a proof of
    absence, or budget exhaustion.  ``budget`` caps the number of search nodes."""
    return _Search(_adjacency(g), budget).run()


def find_ham_path(g: Union[RotGraph, Sequence[Sequence[int]]], budget: Optional[int] = None) -> SearchResult:
    """Hamiltonian path with free endpoints.

    Reduces to a cycle search after adding one vertex adjacent to everything.
    """
    adj = _adjacency(g)
    n = len(adj)
    if n == 0:
        return SearchResult(NONE, None, 0)
    if n == 1:
        return SearchResult(FOUND, [0], 1)
    if n == 2:
        if 1 in adj[0]:
            return SearchResult(FOUND, [0, 1], 1)
        return SearchResult(NONE, None, 1)
    extended = [list(r) + [n] for r in adj] + [list(range(n))]
    res = _Search(extended, budget).run()
    if not res:
        return res
    order = res.order
    i = order.index(n)
    path = order[i + 1:] + order[:i]
    return SearchResult(FOUND, path, res.nodes)


def is_ham_cycle(adj: Sequence[Sequence[int]], order: Sequence[int]) -> bool:
    n = len(adj)
    if len(order) != n or sorted(order) != list(range(n)) or n < 3:
        return False
    return all(order[(i + 1) % n] in adj[order[i]] for i in range(n))


def is_ham_path(adj: Sequence[Sequence[int]], order: Sequence[int], vertices: Optional[Sequence[int]] = None) -> bool:
    """``order`` visits each vertex of ``vertices`` (default: all) once along edges."""
    want = sorted(vertices) if vertices is not None else list(range(len(adj)))
    if sorted(order) != want:
        return False
    return all(order[i + 1] in adj[order[i]] for i in range(len(order) - 1))
