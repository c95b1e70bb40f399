"""Fischer spaces: points, lines of size three, subspaces and boundary graphs.

A :class:`FischerSpace` stores, for every point, a dict from each collinear
point to the third point of their line (the *wedge*).  Everything else
(adjacency, lines, closures, boundary graphs) is derived from that table.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .groups import NotInvolution, conjugate, element_order
from .linalg import rational_spectrum

DEFAULT_SIZE_CAP = 10000
SCHEMA = "matsuo-lab/1"


class FischerError(ValueError):
    pass


class Not3Transposition(FischerError):
    pass


class SizeLimitExceeded(FischerError):
    pass


class NotClosed(FischerError):
    pass


class InvalidFischerSpace(FischerError):
    pass


class FischerSpace:
    """Finite partial linear space with lines of size three.

    ``lines`` is any iterable of point triples.  Points are ``0..point_count-1``;
    ``labels`` optionally records what each point stands for (a transposition,
    a signed pair, a root).  With ``validate=True`` the Fischer axioms are
    checked: lines meet in at most one point and any two intersecting lines
    span a 6-point dual affine plane or a 9-point affine plane.
    """

    def __init__(
        self,
        point_count: int,
        lines: Iterable[Sequence[int]],
        labels: Sequence | None = None,
        *,
        name: str | None = None,
        validate: bool = True,
    ):
        self.point_count = point_count
        wedge: list[dict[int, int]] = [dict() for _ in range(point_count)]
        for line in lines:
            a, b, c = line
            if len({a, b, c}) != 3:
                raise InvalidFischerSpace(f"degenerate line {line}")
            for x, y, z in ((a, b, c), (b, a, c), (a, c, b), (c, a, b), (b, c, a), (c, b, a)):
                old = wedge[x].get(y)
                if old is not None and old != z:
                    raise InvalidFischerSpace(f"points {x}, {y} lie on two lines")
                wedge[x][y] = z
        self._wedge = tuple(wedge)
        self._neighbours = tuple(tuple(sorted(w)) for w in wedge)
        self.labels = tuple(labels) if labels is not None else None
        if self.labels is not None and len(self.labels) != point_count:
            raise InvalidFischerSpace("label count differs from point count")
        self.name = name
        if validate:
            self.validate()

    # -- basic queries ---------------------------------------------------------

    def __len__(self) -> int:
        return self.point_count

    def wedge(self, i: int, j: int) -> int | None:
        """Third point on the line through ``i`` and ``j``, or None."""
        return self._wedge[i].get(j)

    def wedge_map(self, i: int) -> dict[int, int]:
        return self._wedge[i]

    def collinear(self, i: int, j: int) -> bool:
        return j in self._wedge[i]

    def neighbours(self, i: int) -> tuple[int, ...]:
        return self._neighbours[i]

    def degree(self, i: int) -> int:
        return len(self._neighbours[i])

    @property
    def lines(self) -> list[tuple[int, int, int]]:
        out = []
        for a, w in enumerate(self._wedge):
            for b, c in w.items():
                if a < b < c:
                    out.append((a, b, c))
        out.sort()
        return out

    @property
    def line_count(self) -> int:
        return sum(len(w) for w in self._wedge) // 6

    def adjacency_matrix(self) -> list[list[int]]:
        n = self.point_count
        return [[1 if j in self._wedge[i] else 0 for j in range(n)] for i in range(n)]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FischerSpace):
            return NotImplemented
        return self.point_count == other.point_count and self._wedge == other._wedge

    def __hash__(self) -> int:
        return hash((self.point_count, tuple(self.lines)))

    def __repr__(self) -> str:
        tag = f" {self.name}" if self.name else ""
        return f"<FischerSpace{tag}: {self.point_count} points, {self.line_count} lines>"

    # -- subspaces ---------------------------------------------------------------

    def closure(self, seed: Iterable[int], base: Iterable[int] = ()) -> frozenset[int]:
        """Smallest wedge-closed set containing ``seed``.

        ``base`` may name a set already known to be closed; pairs inside it are
        skipped, which makes one-point extensions of a subspace cheap.
        """
        members = set(base)
        frontier = []
        for x in seed:
            if x not in members:
                members.add(x)
                frontier.append(x)
        wedge = self._wedge
        while frontier:
            x = frontier.pop()
            for y, z in wedge[x].items():
                if y in members and z not in members:
                    members.add(z)
                    frontier.append(z)
        return frozenset(members)

    def is_closed(self, points: Iterable[int]) -> bool:
        pts = set(points)
        return all(
            z in pts for x in pts for y, z in self._wedge[x].items() if y in pts
        )

    def components(self, points: Iterable[int] | None = None) -> list[tuple[int, ...]]:
        """Connected components of the collinearity graph on ``points``."""
        pts = set(range(self.point_count)) if points is None else set(points)
        seen: set[int] = set()
        out = []
        for start in sorted(pts):
            if start in seen:
                continue
            comp = [start]
            seen.add(start)
            queue = deque([start])
            while queue:
                x = queue.popleft()
                for y in self._wedge[x]:
                    if y in pts and y not in seen:
                        seen.add(y)
                        comp.append(y)
                        queue.append(y)
            out.append(tuple(sorted(comp)))
        return out

    def is_connected(self, points: Iterable[int] | None = None) -> bool:
        return len(self.components(points)) <= 1

    def restrict(self, points: Iterable[int]) -> tuple["FischerSpace", list[int]]:
        """Induced space on a closed point set, plus the list new -> old index."""
        old = sorted(points)
        index = {p: i for i, p in enumerate(old)}
        lines = []
        for a in old:
            for b, c in self._wedge[a].items():
                if a < b < c and b in index and c in index:
                    lines.append((index[a], index[b], index[c]))
                elif a < b and b in index and c not in index:
                    raise NotClosed(f"point set is not closed: wedge({a},{b}) = {c}")
        labels = [self.labels[p] for p in old] if self.labels is not None else None
        return FischerSpace(len(old), lines, labels, validate=False), old

    # -- validation --------------------------------------------------------------

    def validate(self) -> None:
        """Check the Fischer-space axioms; raise InvalidFischerSpace on failure."""
        for x, w in enumerate(self._wedge):
            for y, z in w.items():
                if z in (x, y) or self._wedge[y].get(x) != z or self._wedge[x].get(z) != y:
                    raise InvalidFischerSpace(f"inconsistent wedge at ({x}, {y})")
        for p in range(self.point_count):
            through = sorted({tuple(sorted((p, q, r))) for q, r in self._wedge[p].items()})
            for i in range(len(through)):
                for j in range(i + 1, len(through)):
                    span = self.closure(set(through[i]) | set(through[j]))
                    inner = sum(
                        1 for a in span for b, c in self._wedge[a].items() if a < b < c and b in span
                    )
                    if (len(span), inner) not in ((6, 4), (9, 12)):
                        raise InvalidFischerSpace(
                            f"lines {through[i]} and {through[j]} span {len(span)} points"
                            f" with {inner} lines"
                        )

    # -- serialisation ------------------------------------------------------------

    def to_text(self) -> str:
        rows = [f"points {self.point_count}"]
        rows.extend(f"{a} {b} {c}" for a, b, c in self.lines)
        return "\n".join(rows) + "\n"

    @classmethod
    def from_text(cls, text: str, validate: bool = True) -> "FischerSpace":
        rows = [r.strip() for r in text.splitlines() if r.strip() and not r.startswith("#")]
        if not rows or not rows[0].startswith("points"):
            raise ValueError("missing 'points N' header")
        n = int(rows[0].split()[1])
        lines = []
        for r in rows[1:]:
            parts = r.split()
            if len(parts) != 3:
                raise ValueError(f"bad line record {r!r}")
            a, b, c = map(int, parts)
            if not all(0 <= x < n for x in (a, b, c)):
                raise ValueError(f"point index out of range in {r!r}")
            lines.append((a, b, c))
        return cls(n, lines, validate=validate)

    def to_json(self) -> dict:
        out = {"schema": SCHEMA, "points": self.point_count, "lines": [list(l) for l in self.lines]}
        if self.labels is not None:
            out["labels"] = [label_string(l) for l in self.labels]
        if self.name:
            out["name"] = self.name
        return out

    @classmethod
    def from_json(cls, data: dict | str, validate: bool = True) -> "FischerSpace":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["points"], [tuple(l) for l in data["lines"]], data.get("labels"),
                   name=data.get("name"), validate=validate)


def label_string(label) -> str:
    if isinstance(label, tuple):
        return "(" + ", ".join(label_string(x) for x in label) + ")"
    return str(label)


# ---------------------------------------------------------------------------
# construction


def build_from_involutions(
    generators: Sequence, size_cap: int = DEFAULT_SIZE_CAP, *, name: str | None = None
) -> FischerSpace:
    """Fischer space of the conjugacy closure of ``generators``.

    Points are the closure of the generator set under conjugation by the
    generated group, in discovery order; labels are the group elements.
    """
    gens = list(dict.fromkeys(generators))
    if not gens:
        return FischerSpace(0, [], [], name=name)
    kinds = {type(g) for g in gens}
    if len(kinds) != 1:
        raise TypeError("generators mix representation variants")
    for g in gens:
        if g.is_identity() or not (g * g).is_identity():
            raise NotInvolution(f"{g} is not an involution")
    points = list(gens)
    index = {g: i for i, g in enumerate(points)}
    queue = deque(points)
    while queue:
        c = queue.popleft()
        for d in gens:
            x = conjugate(c, d)
            if x not in index:
                if len(points) >= size_cap:
                    raise SizeLimitExceeded(f"more than {size_cap} transpositions")
                index[x] = len(points)
                points.append(x)
                queue.append(x)
    lines = set()
    n = len(points)
    for i in range(n):
        c = points[i]
        for j in range(i + 1, n):
            d = points[j]
            cd = c * d
            o = element_order(cd, cap=4)
            if o == 3:
                k = index.get(conjugate(d, c))
                if k is None:
                    raise Not3Transposition("conjugate of a point is missing")
                lines.add(tuple(sorted((i, j, k))))
            elif o > 3:
                raise Not3Transposition(f"product of {c} and {d} has order > 3")
    return FischerSpace(n, sorted(lines), points, name=name)


def relabel(space: FischerSpace, order: Sequence[int], *, name: str | None = None) -> FischerSpace:
    """Copy of ``space`` whose point ``i`` is the old point ``order[i]``."""
    new = {old: i for i, old in enumerate(order)}
    lines = [tuple(new[p] for p in l) for l in space.lines]
    labels = [space.labels[o] for o in order] if space.labels is not None else None
    return FischerSpace(len(order), lines, labels, name=name or space.name, validate=False)


def double_graph(g: FischerSpace, *, name: str | None = None) -> FischerSpace:
    """Double of ``g``: point ``x`` becomes ``x+`` (index x) and ``x-`` (index x+N).

    Each line ``{x, y, x^y}`` of ``g`` yields the four lines
    ``{x^e, y^f, (x^y)^(e f)}`` for signs ``e, f``.
    """
    n = g.point_count
    lines = []
    for a, b, c in g.lines:
        for e in (0, 1):
            for f in (0, 1):
                lines.append((a + e * n, b + f * n, c + (e ^ f) * n))
    labels = None
    if g.labels is not None:
        labels = [("+", l) for l in g.labels] + [("-", l) for l in g.labels]
    return FischerSpace(2 * n, lines, labels, name=name, validate=False)


def subspace_closure(g: FischerSpace, seed: Iterable[int]) -> frozenset[int]:
    return g.closure(seed)


def regularity(g: FischerSpace, points: Iterable[int] | None = None) -> int | None:
    """Common number of collinear points, or None when the graph is not regular.

    With ``points`` the degree is taken inside the induced subgraph.
    """
    if points is None:
        degrees = {g.degree(i) for i in range(g.point_count)}
    else:
        pts = set(points)
        degrees = {sum(1 for y in g.wedge_map(x) if y in pts) for x in pts}
    if not degrees:
        return 0
    return degrees.pop() if len(degrees) == 1 else None


def connectivity(g: FischerSpace) -> list[tuple[int, ...]]:
    return g.components()


# ---------------------------------------------------------------------------
# boundary graphs and very regularity


@dataclass(frozen=True)
class BoundaryGraph:
    """Points of ``G \\ H`` collinear with ``H``; edges mediated by ``H``.

    ``adjacency[a][b]`` counts the points ``x`` of ``H`` collinear with
    ``points[a]`` and with ``x ^ points[a] == points[b]``.
    """

    points: tuple[int, ...]
    adjacency: tuple[tuple[int, ...], ...]
    h_degrees: tuple[int, ...] = field(default=())  # |y~ cap H| per point

    @property
    def size(self) -> int:
        return len(self.points)

    def degrees(self) -> list[int]:
        return [sum(r) for r in self.adjacency]

    def regularity(self) -> int | None:
        ds = set(self.degrees())
        if not ds:
            return 0
        return ds.pop() if len(ds) == 1 else None

    def is_simple(self) -> bool:
        return all(x in (0, 1) for r in self.adjacency for x in r)

    def components(self) -> list[tuple[int, ...]]:
        return graph_components(self.adjacency)

    def is_connected(self) -> bool:
        return len(self.components()) <= 1


def graph_components(adjacency: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    n = len(adjacency)
    seen = [False] * n
    out = []
    for s in range(n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y, a in enumerate(adjacency[x]):
                if a and not seen[y]:
                    seen[y] = True
                    comp.append(y)
                    queue.append(y)
        out.append(tuple(sorted(comp)))
    return out


def boundary_graph(g: FischerSpace, h: Iterable[int]) -> BoundaryGraph:
    hs = frozenset(h)
    if not g.is_closed(hs):
        raise NotClosed("subspace is not wedge-closed")
    pts = sorted({y for x in hs for y in g.wedge_map(x) if y not in hs})
    index = {p: i for i, p in enumerate(pts)}
    adj = [[0] * len(pts) for _ in pts]
    hdeg = []
    for a, y in enumerate(pts):
        count = 0
        for x, z in g.wedge_map(y).items():
            if x in hs:
                count += 1
                adj[a][index[z]] += 1
        hdeg.append(count)
    return BoundaryGraph(tuple(pts), tuple(tuple(r) for r in adj), tuple(hdeg))


def boundary_degree(g: FischerSpace, h: Iterable[int]) -> int | None:
    """The constant ``|y~ cap H|`` over boundary points ``y``, if constant."""
    ds = set(boundary_graph(g, h).h_degrees)
    if not ds:
        return 0
    return ds.pop() if len(ds) == 1 else None


@dataclass(frozen=True)
class VeryRegularVerdict:
    h_connected: bool
    g_connected: bool
    h_maximal: bool
    boundary_connected: bool
    k: int | None  # boundary degree, reported when very regular

    @property
    def very_regular(self) -> bool:
        return self.h_connected and self.g_connected and self.h_maximal and self.boundary_connected

    def to_json(self) -> dict:
        return {
            "h_connected": self.h_connected,
            "g_connected": self.g_connected,
            "h_maximal": self.h_maximal,
            "boundary_connected": self.boundary_connected,
            "very_regular": self.very_regular,
            "k": self.k,
        }


def is_maximal(g: FischerSpace, h: frozenset[int]) -> bool:
    """No closed set lies strictly between ``h`` and all of ``g``."""
    n = g.point_count
    if len(h) >= n:
        return False
    for x in range(n):
        if x not in h and len(g.closure((x,), base=h)) != n:
            return False
    return True


def is_very_regular(g: FischerSpace, h: Iterable[int]) -> VeryRegularVerdict:
    hs = frozenset(h)
    if not g.is_closed(hs):
        raise NotClosed("subspace is not wedge-closed")
    bg = boundary_graph(g, hs)
    verdict = VeryRegularVerdict(
        h_connected=bool(hs) and g.is_connected(hs),
        g_connected=g.is_connected(),
        h_maximal=is_maximal(g, hs),
        boundary_connected=bg.is_connected(),
        k=None,
    )
    if verdict.very_regular:
        ds = set(bg.h_degrees)
        k = ds.pop() if len(ds) == 1 else None
        verdict = VeryRegularVerdict(True, True, True, True, k)
    return verdict


@dataclass
class HypothesisReport:
    """Outcome of checking maximal connected pairs of subspaces."""

    subspaces: int = 0
    pairs_checked: int = 0
    failures: list = field(default_factory=list)
    complete: bool = True

    @property
    def verdict(self) -> str:
        if self.failures:
            return "fail"
        return "pass" if self.complete else "partial"

    def to_json(self) -> dict:
        return {
            "subspaces": self.subspaces,
            "pairs_checked": self.pairs_checked,
            "failures": self.failures,
            "complete": self.complete,
            "verdict": self.verdict,
        }


def connected_subspaces(g: FischerSpace, depth_cap: int | None = None):
    """All non-empty connected closed subspaces, grown by one point at a time.

    Returns ``(levels, complete)`` where ``levels[d]`` holds the subspaces first
    reached after ``d`` extensions.  Each connected closed subspace is the
    closure of a chain of points each collinear with an earlier one, so the
    search is exhaustive unless ``depth_cap`` stops it early.
    """
    level = {frozenset((p,)) for p in range(g.point_count)}
    seen = set(level)
    levels = [sorted(level, key=sorted)]
    complete = True
    depth = 0
    while level:
        if depth_cap is not None and depth >= depth_cap:
            complete = all(len(k) == g.point_count or not _frontier(g, k) for k in level)
            break
        nxt = set()
        for k in level:
            for x in _frontier(g, k):
                hk = g.closure((x,), base=k)
                if hk not in seen:
                    seen.add(hk)
                    nxt.add(hk)
        level = nxt
        if level:
            levels.append(sorted(level, key=sorted))
        depth += 1
    return levels, complete


def _frontier(g: FischerSpace, k: frozenset[int]) -> list[int]:
    return sorted({y for x in k for y in g.wedge_map(x) if y not in k})


def check_hypothesis_vreg(
    g: FischerSpace, chain_depth_cap: int | None = None, size_cap: int = 400
) -> HypothesisReport:
    """Test every pair ``K < H`` of connected subspaces with ``K`` maximal in ``H``.

    For each such pair the embedding must be very regular (the only property
    that can still fail is connectivity of the boundary graph ``H/K``).
    Disconnected ``K`` or ``H`` are outside the statement and skipped.
    """
    if g.point_count > size_cap:
        raise SizeLimitExceeded(f"{g.point_count} points exceeds the cap {size_cap}")
    report = HypothesisReport()
    levels, complete = connected_subspaces(g, chain_depth_cap)
    report.complete = complete
    for level in levels:
        for k in level:
            report.subspaces += 1
            ext: dict[int, frozenset[int]] = {}
            for x in _frontier(g, k):
                ext[x] = g.closure((x,), base=k)
            for hset in sorted(set(ext.values()), key=sorted):
                extra = hset - k
                if not all(ext.get(z) == hset for z in extra):
                    continue
                report.pairs_checked += 1
                sub, old = g.restrict(hset)
                pos = {p: i for i, p in enumerate(old)}
                verdict = is_very_regular(sub, [pos[p] for p in k])
                if not verdict.very_regular:
                    report.failures.append(
                        {"K": sorted(k), "H": sorted(hset), "verdict": verdict.to_json()}
                    )
    return report


# ---------------------------------------------------------------------------
# spectra


def integer_spectrum(adjacency: Sequence[Sequence[int]]) -> dict[Fraction, int]:
    """Eigenvalues (descending) with multiplicities of a symmetric integer matrix."""
    n = len(adjacency)
    for i in range(n):
        if len(adjacency[i]) != n:
            raise ValueError("matrix is not square")
        for j in range(i):
            if adjacency[i][j] != adjacency[j][i]:
                raise ValueError("matrix is not symmetric")
    spec = rational_spectrum(adjacency)
    return dict(sorted(spec.items(), key=lambda kv: -kv[0]))
