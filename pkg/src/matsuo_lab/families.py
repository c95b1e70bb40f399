"""Named Fischer spaces and the spec-string parser used by the CLI.

==============  ==========================================================
``A(n)``        transpositions of Sym(n+1), ordered by the transposed pair
``D(n)``        double of ``A(n-1)``, cross-checked against the reflections
                of signed permutations
``E(6|7|8)``    positive roots, collinear when the inner product is +-1
``Affine3(n)``  points of F_3^n, every pair collinear, ``u ^ v = -u - v``
``W3AffineA(n)``  transpositions of F_3^(n+1) : Sym(n+1) modulo all-ones
``K(n)``        complete graph on ``n`` vertices (a plain graph)
==============  ==========================================================
"""

from __future__ import annotations

import itertools
import re
from fractions import Fraction
from pathlib import Path

from .fischer import (
    DEFAULT_SIZE_CAP,
    BoundaryGraph,
    FischerSpace,
    SizeLimitExceeded,
    build_from_involutions,
    double_graph,
    relabel,
)
from .groups import AffinePair, Permutation, SignedOrthogonal
from .iso import is_wedge_isomorphism


class ConstructionError(ValueError):
    pass


class SpecError(ValueError):
    """A space spec string that does not parse."""


def _check_cap(count: int, cap: int) -> None:
    if count > cap:
        raise SizeLimitExceeded(f"{count} points exceeds the cap {cap}")


def symmetric_space(n: int, size_cap: int = DEFAULT_SIZE_CAP) -> FischerSpace:
    """``A(n)``: transpositions of Sym(n+1) on letters ``0..n``."""
    if n < 0:
        raise ConstructionError("A(n) needs n >= 0")
    _check_cap(n * (n + 1) // 2, size_cap)
    if n == 0:
        return FischerSpace(0, [], [], name="A0")
    gens = [Permutation.transposition(n + 1, i, i + 1) for i in range(n)]
    space = build_from_involutions(gens, size_cap)
    order = sorted(range(space.point_count), key=lambda i: space.labels[i].support())
    return relabel(space, order, name=f"A{n}")


def transposition_index(n: int) -> dict[tuple[int, int], int]:
    """Map from a pair ``i < j`` of letters to its point in ``A(n)``."""
    pairs = list(itertools.combinations(range(n + 1), 2))
    return {p: k for k, p in enumerate(pairs)}


def _signed_reflection(m: int, i: int, j: int, sign: int) -> SignedOrthogonal:
    # reflection in e_i - e_j (sign +1) or e_i + e_j (sign -1)
    images = list(range(m))
    signs = [1] * m
    images[i], images[j] = j, i
    if sign < 0:
        signs[i] = signs[j] = -1
    return SignedOrthogonal.signed_permutation(images, signs)


def signed_permutation_space(m: int, size_cap: int = DEFAULT_SIZE_CAP) -> FischerSpace:
    """Reflections of W(D_m) generated from its simple reflections."""
    if m < 2:
        raise ConstructionError("D(m) needs m >= 2")
    gens = [_signed_reflection(m, i, i + 1, 1) for i in range(m - 1)]
    gens.append(_signed_reflection(m, m - 2, m - 1, -1))
    return build_from_involutions(gens, size_cap, name=f"W(D{m})")


def orthogonal_space(m: int, size_cap: int = DEFAULT_SIZE_CAP, cross_check: bool = True) -> FischerSpace:
    """``D(m)`` as the double of ``A(m-1)``.

    Point ``x+`` of the double (transposition ``(i j)``) is labelled by the
    reflection in ``e_i - e_j`` and ``x-`` by the reflection in ``e_i + e_j``.
    With ``cross_check`` the space generated by signed permutations is built
    independently and the labelling is verified to be a wedge isomorphism.
    """
    _check_cap(m * (m - 1), size_cap)
    base = symmetric_space(m - 1, size_cap)
    dg = double_graph(base, name=f"D{m}")
    pairs = [lab.support() for lab in base.labels]
    labels = [_signed_reflection(m, i, j, 1) for i, j in pairs]
    labels += [_signed_reflection(m, i, j, -1) for i, j in pairs]
    space = FischerSpace(dg.point_count, dg.lines, labels, name=f"D{m}", validate=False)
    if cross_check and m >= 2:
        ref = signed_permutation_space(m, size_cap)
        where = {lab: k for k, lab in enumerate(ref.labels)}
        try:
            witness = [where[lab] for lab in labels]
        except KeyError as exc:  # pragma: no cover - would signal a construction bug
            raise ConstructionError("reflection missing from the signed-permutation space") from exc
        if not is_wedge_isomorphism(space, ref, witness):
            raise ConstructionError("double graph and signed permutations disagree")
    return space


# ---------------------------------------------------------------------------
# root systems


def e8_roots() -> list[tuple[Fraction, ...]]:
    roots = []
    for i, j in itertools.combinations(range(8), 2):
        for si in (1, -1):
            for sj in (1, -1):
                v = [Fraction(0)] * 8
                v[i], v[j] = Fraction(si), Fraction(sj)
                roots.append(tuple(v))
    half = Fraction(1, 2)
    for signs in itertools.product((1, -1), repeat=8):
        if signs.count(-1) % 2 == 0:
            roots.append(tuple(half * s for s in signs))
    return roots


def _dot(u, v) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def _positive(v) -> tuple[Fraction, ...]:
    for x in v:
        if x:
            return tuple(v) if x > 0 else tuple(-y for y in v)
    raise ValueError("zero vector")


def exceptional_roots(rank: int) -> list[tuple[Fraction, ...]]:
    """Positive roots (first nonzero coordinate positive) of E6, E7 or E8."""
    roots = e8_roots()
    half = Fraction(1, 2)
    if rank == 8:
        constraints = []
    elif rank == 7:
        constraints = [tuple([half] * 8)]
    elif rank == 6:
        e67 = tuple(Fraction(1) if k in (6, 7) else Fraction(0) for k in range(8))
        constraints = [tuple([half] * 8), e67]
    else:
        raise ConstructionError("only E6, E7 and E8 are supported")
    sel = {_positive(r) for r in roots if all(_dot(r, c) == 0 for c in constraints)}
    return sorted(sel)


def root_space(roots: list[tuple[Fraction, ...]], name: str | None = None) -> FischerSpace:
    """Points are roots up to sign; ``r ~ s`` iff ``r.s = +-1``, wedge via reflection."""
    index = {r: k for k, r in enumerate(roots)}
    lines = set()
    for a, r in enumerate(roots):
        for b in range(a + 1, len(roots)):
            s = roots[b]
            d = _dot(r, s)
            if d in (1, -1):
                w = _positive(tuple(y - d * x for x, y in zip(r, s)))
                lines.add(tuple(sorted((a, b, index[w]))))
    labels = [SignedOrthogonal.reflection(r) for r in roots]
    return FischerSpace(len(roots), sorted(lines), labels, name=name)


def exceptional_space(rank: int, size_cap: int = DEFAULT_SIZE_CAP) -> FischerSpace:
    roots = exceptional_roots(rank)
    _check_cap(len(roots), size_cap)
    return root_space(roots, name=f"E{rank}")


# ---------------------------------------------------------------------------
# affine families


def affine3_space(n: int, size_cap: int = DEFAULT_SIZE_CAP) -> FischerSpace:
    """``3^n:2``: points ``F_3^n`` (lexicographic), lines ``{u, v, -u-v}``."""
    if n < 0:
        raise ConstructionError("Affine3(n) needs n >= 0")
    _check_cap(3**n, size_cap)
    pts = list(itertools.product(range(3), repeat=n))
    index = {p: k for k, p in enumerate(pts)}
    lines = set()
    for a, u in enumerate(pts):
        for b in range(a + 1, len(pts)):
            v = pts[b]
            w = tuple((-x - y) % 3 for x, y in zip(u, v))
            lines.add(tuple(sorted((a, b, index[w]))))
    return FischerSpace(len(pts), sorted(lines), pts, name=f"Aff3:{n}", validate=n <= 3)


def w3_affine_generators(n: int) -> list[AffinePair]:
    """Simple reflections of the affine Weyl group of type A_n, reduced mod 3."""
    m = n + 1
    zero = (0,) * m
    gens = [AffinePair.make(zero, Permutation.transposition(m, i, i + 1)) for i in range(n)]
    shift = [0] * m
    shift[0], shift[1] = 1, -1
    gens.append(AffinePair.make(shift, Permutation.transposition(m, 0, 1)))
    return gens


def w3_affine_space(n: int, size_cap: int = DEFAULT_SIZE_CAP) -> FischerSpace:
    if n < 1:
        raise ConstructionError("W3AffineA(n) needs n >= 1")
    _check_cap(3 * n * (n + 1) // 2, size_cap)
    space = build_from_involutions(w3_affine_generators(n), size_cap)
    order = sorted(
        range(space.point_count),
        key=lambda i: (space.labels[i].permutation.support(), space.labels[i].vector),
    )
    return relabel(space, order, name=f"W3A:{n}")


def complete_graph(n: int) -> BoundaryGraph:
    adj = tuple(tuple(0 if i == j else 1 for j in range(n)) for i in range(n))
    return BoundaryGraph(tuple(range(n)), adj, ())


# ---------------------------------------------------------------------------
# dispatch

_SPEC = re.compile(r"^(A|D|E|K|Aff3:|W3A:)(\d+)$")


def build_named(family: str, n: int | None = None, size_cap: int = DEFAULT_SIZE_CAP):
    """Build a named family.  ``family`` may be a full spec like ``"D6"``.

    Returns a :class:`FischerSpace`, except for ``K`` which yields a complete
    graph (it is a boundary graph, not a Fischer space).
    """
    if n is None:
        m = _SPEC.match(family.strip())
        if not m:
            raise SpecError(f"unknown space spec {family!r}")
        family, n = m.group(1), int(m.group(2))
    key = family.rstrip(":").rstrip("(").upper()
    if key in ("A",):
        return symmetric_space(n, size_cap)
    if key in ("D",):
        if n < 2:
            raise ConstructionError("D(n) needs n >= 2")
        return orthogonal_space(n, size_cap)
    if key in ("E",):
        return exceptional_space(n, size_cap)
    if key in ("AFF3", "AFFINE3"):
        return affine3_space(n, size_cap)
    if key in ("W3A", "W3AFFINEA"):
        return w3_affine_space(n, size_cap)
    if key in ("K", "KN_GRAPH", "KN"):
        return complete_graph(n)
    raise SpecError(f"unknown family {family!r}")


def parse_space_spec(spec: str, size_cap: int = DEFAULT_SIZE_CAP):
    """Space from a CLI spec: ``A5``, ``D6``, ``E6``, ``Aff3:3``, ``W3A:3``,
    ``A4pm`` (a double graph) or a path to a text/JSON space file."""
    s = spec.strip()
    if s.endswith("pm") or s.endswith("±"):
        inner = s[:-2] if s.endswith("pm") else s[:-1]
        base = build_named(inner, size_cap=size_cap)
        if not isinstance(base, FischerSpace):
            raise ConstructionError("only Fischer spaces can be doubled")
        return double_graph(base, name=f"{base.name}pm")
    if _SPEC.match(s):
        return build_named(s, size_cap=size_cap)
    path = Path(s)
    if path.exists():
        text = path.read_text()
        if text.lstrip().startswith("{"):
            return FischerSpace.from_json(text)
        return FischerSpace.from_text(text)
    raise SpecError(f"unknown space spec {spec!r}")
