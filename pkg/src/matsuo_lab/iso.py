"""Isomorphism tests for Fischer spaces and small graphs.

Both searches start from colour refinement (iterated neighbour-colour
multisets, computed jointly so colours are comparable across the inputs) and
then backtrack.  For Fischer spaces every new assignment is propagated along
lines: once ``a -> b`` and ``a' -> b'`` are fixed, ``a ^ a'`` is forced to
``b ^ b'``, which usually pins the whole map after a handful of choices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .fischer import DEFAULT_SIZE_CAP, FischerSpace, SizeLimitExceeded


@dataclass(frozen=True)
class IsomorphismResult:
    isomorphic: bool
    witness: tuple[int, ...] | None = None  # witness[i] = image of point i

    def __bool__(self) -> bool:
        return self.isomorphic


def _refine(adj_lists: Sequence[Sequence[Sequence[int]]]) -> list[list[int]]:
    """Stable joint colouring of several graphs given as neighbour lists."""
    colours = [[len(nb) for nb in g] for g in adj_lists]
    while True:
        sigs = [
            [(c[v], tuple(sorted(c[u] for u in g[v]))) for v in range(len(g))]
            for g, c in zip(adj_lists, colours)
        ]
        palette = {s: i for i, s in enumerate(sorted({s for sg in sigs for s in sg}))}
        new = [[palette[s] for s in sg] for sg in sigs]
        if all(len(set(n)) == len(set(c)) for n, c in zip(new, colours)):
            return new
        colours = new


def _histogram(c: list[int]) -> dict[int, int]:
    h: dict[int, int] = {}
    for x in c:
        h[x] = h.get(x, 0) + 1
    return h


def _search(n, nb1, nb2, col1, col2, wedge1=None, wedge2=None):
    adj1 = [set(x) for x in nb1]
    adj2 = [set(x) for x in nb2]
    # visiting order: BFS from the rarest colour, preferring points tied to mapped ones
    hist = _histogram(col1)
    order: list[int] = []
    placed = [False] * n
    for start in sorted(range(n), key=lambda v: (hist[col1[v]], v)):
        if placed[start]:
            continue
        placed[start] = True
        queue = [start]
        while queue:
            v = queue.pop(0)
            order.append(v)
            for u in sorted(nb1[v]):
                if not placed[u]:
                    placed[u] = True
                    queue.append(u)

    def assign(f, used, a, b):
        """Assign a -> b and propagate; return False on contradiction."""
        stack = [(a, b)]
        while stack:
            a, b = stack.pop()
            if a in f:
                if f[a] != b:
                    return False
                continue
            if b in used or col1[a] != col2[b]:
                return False
            for a2, b2 in f.items():
                if (a2 in adj1[a]) != (b2 in adj2[b]):
                    return False
            f[a] = b
            used.add(b)
            if wedge1 is not None:
                for a2 in adj1[a]:
                    b2 = f.get(a2)
                    if b2 is not None:
                        stack.append((wedge1[a][a2], wedge2[b][b2]))
        return True

    def rec(f, used, pos):
        while pos < n and order[pos] in f:
            pos += 1
        if pos == n:
            return f
        a = order[pos]
        for b in range(n):
            if b in used or col2[b] != col1[a]:
                continue
            f2, used2 = dict(f), set(used)
            if assign(f2, used2, a, b):
                res = rec(f2, used2, pos + 1)
                if res is not None:
                    return res
        return None

    return rec({}, set(), 0)


def isomorphic(g1: FischerSpace, g2: FischerSpace, size_cap: int = DEFAULT_SIZE_CAP) -> IsomorphismResult:
    """Search for a point bijection carrying lines to lines."""
    if max(g1.point_count, g2.point_count) > size_cap:
        raise SizeLimitExceeded("space too large for isomorphism search")
    n = g1.point_count
    if n != g2.point_count or g1.line_count != g2.line_count:
        return IsomorphismResult(False)
    nb1 = [g1.neighbours(i) for i in range(n)]
    nb2 = [g2.neighbours(i) for i in range(n)]
    col1, col2 = _refine([nb1, nb2])
    if _histogram(col1) != _histogram(col2):
        return IsomorphismResult(False)
    f = _search(n, nb1, nb2, col1, col2, [g1.wedge_map(i) for i in range(n)],
                [g2.wedge_map(i) for i in range(n)])
    if f is None:
        return IsomorphismResult(False)
    witness = tuple(f[i] for i in range(n))
    if not is_wedge_isomorphism(g1, g2, witness):  # pragma: no cover - defensive
        raise AssertionError("search produced an invalid witness")
    return IsomorphismResult(True, witness)


def is_wedge_isomorphism(g1: FischerSpace, g2: FischerSpace, witness: Sequence[int]) -> bool:
    n = g1.point_count
    if n != g2.point_count or sorted(witness) != list(range(n)):
        return False
    for a in range(n):
        if len(g1.wedge_map(a)) != len(g2.wedge_map(witness[a])):
            return False
        for b, c in g1.wedge_map(a).items():
            if g2.wedge(witness[a], witness[b]) != witness[c]:
                return False
    return True


def graph_isomorphic(adj1: Sequence[Sequence[int]], adj2: Sequence[Sequence[int]]) -> IsomorphismResult:
    """Isomorphism of simple graphs given by 0/1 adjacency matrices."""
    n = len(adj1)
    if n != len(adj2):
        return IsomorphismResult(False)
    for adj in (adj1, adj2):
        if any(x not in (0, 1) for r in adj for x in r):
            raise ValueError("graph_isomorphic expects 0/1 adjacency matrices")
    nb1 = [[j for j, x in enumerate(r) if x] for r in adj1]
    nb2 = [[j for j, x in enumerate(r) if x] for r in adj2]
    col1, col2 = _refine([nb1, nb2])
    if _histogram(col1) != _histogram(col2):
        return IsomorphismResult(False)
    f = _search(n, nb1, nb2, col1, col2)
    if f is None:
        return IsomorphismResult(False)
    witness = tuple(f[i] for i in range(n))
    ok = all(adj1[i][j] == adj2[witness[i]][witness[j]] for i in range(n) for j in range(n))
    if not ok:  # pragma: no cover - defensive
        raise AssertionError("search produced an invalid witness")
    return IsomorphismResult(True, witness)
