"""Matsuo algebras of Fischer spaces.

The algebra has the points of a Fischer space as a basis, with product

    x.x = x,    x.y = (a/2)(x + y - x^y) if x ~ y,    x.y = 0 otherwise,

and carries the symmetric form ``(x, x) = 2c``, ``(x, y) = c a`` for collinear
points and 0 otherwise.  Scalars are ``Fraction`` when ``a`` is a rational
number and :class:`RationalFunction` when ``a`` is the indeterminate.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .fischer import FischerSpace, NotClosed, regularity
from .linalg import kernel
from .scalars import (
    QQ,
    QQa,
    MixedFieldVariant,
    RationalFunction,
    format_scalar,
    parse_scalar,
)


class DegenerateAlpha(ArithmeticError):
    """``1 + a k / 2`` vanishes for some component: no identity element exists."""


class ChargeUnset(ValueError):
    pass


class AlgebraElement:
    """Vector in a Matsuo algebra, stored sparsely as ``{point: coefficient}``."""

    __slots__ = ("dimension", "terms", "_hash")

    def __init__(self, dimension: int, terms: Mapping[int, object] | None = None):
        self.dimension = dimension
        self.terms = {i: c for i, c in (terms or {}).items() if c}
        self._hash = None

    @classmethod
    def from_coeffs(cls, coeffs: Sequence) -> "AlgebraElement":
        return cls(len(coeffs), dict(enumerate(coeffs)))

    def coeffs(self, zero) -> list:
        out = [zero] * self.dimension
        for i, c in self.terms.items():
            out[i] = c
        return out

    def __getitem__(self, i: int):
        return self.terms.get(i, 0)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.dimension == other.dimension and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.dimension, frozenset(self.terms.items())))
        return self._hash

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        out = dict(self.terms)
        for i, c in other.terms.items():
            x = out.get(i)
            out[i] = c if x is None else x + c
        return AlgebraElement(self.dimension, out)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.dimension, {i: -c for i, c in self.terms.items()})

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def scale(self, s) -> "AlgebraElement":
        return AlgebraElement(self.dimension, {i: s * c for i, c in self.terms.items()})

    def support(self) -> list[int]:
        return sorted(self.terms)

    def to_json(self, zero) -> dict:
        return {"coeffs": [format_scalar(c) for c in self.coeffs(zero)]}

    def __repr__(self) -> str:
        body = " + ".join(f"({format_scalar(c)})*x{i}" for i, c in sorted(self.terms.items()))
        return f"AlgebraElement({body or '0'})"


class MatsuoAlgebra:
    """Matsuo algebra ``M_a(space)`` with optional form parameter ``charge``."""

    def __init__(self, space: FischerSpace, alpha, charge=None):
        self.space = space
        if isinstance(alpha, RationalFunction):
            self.field = QQa
        elif isinstance(alpha, (int, Fraction)):
            self.field = QQ
        elif isinstance(alpha, str):
            alpha = parse_scalar(alpha)
            self.field = QQa if isinstance(alpha, RationalFunction) else QQ
        else:
            raise TypeError(f"unsupported alpha {alpha!r}")
        self.alpha = self.field(alpha)
        self.half_alpha = self.alpha / 2
        self.charge = None if charge is None else self.field(charge)
        self.dimension = space.point_count

    @property
    def generic(self) -> bool:
        return self.field is QQa

    @property
    def zero(self):
        return self.field.zero

    @property
    def one(self):
        return self.field.one

    # -- elements -------------------------------------------------------------

    def point(self, i: int) -> AlgebraElement:
        return AlgebraElement(self.dimension, {i: self.one})

    def element(self, coeffs: Sequence | Mapping[int, object]) -> AlgebraElement:
        if isinstance(coeffs, Mapping):
            terms = {i: self._coerce(c) for i, c in coeffs.items()}
        else:
            if len(coeffs) != self.dimension:
                raise ValueError("coefficient vector has the wrong length")
            terms = {i: self._coerce(c) for i, c in enumerate(coeffs)}
        return AlgebraElement(self.dimension, terms)

    def _coerce(self, c):
        if isinstance(c, str):
            c = parse_scalar(c, generic=self.generic)
        if self.generic and isinstance(c, Fraction):
            raise MixedFieldVariant("rational coefficient in a Q(a) algebra; coerce explicitly")
        if not self.generic and isinstance(c, RationalFunction):
            raise MixedFieldVariant("rational-function coefficient in a Q algebra")
        return self.field(c)

    def sum_of_points(self, points: Iterable[int], coeff=None) -> AlgebraElement:
        c = self.one if coeff is None else coeff
        return AlgebraElement(self.dimension, {p: c for p in points})

    def element_from_json(self, data: dict) -> AlgebraElement:
        return self.element(list(data["coeffs"]))

    # -- product ----------------------------------------------------------------

    def multiply(self, u: AlgebraElement, v: AlgebraElement) -> AlgebraElement:
        if len(u.terms) > len(v.terms):
            u, v = v, u
        out: dict[int, object] = {}
        ha = self.half_alpha
        vt = v.terms

        def add(i, c):
            x = out.get(i)
            out[i] = c if x is None else x + c

        for i, a in u.terms.items():
            b = vt.get(i)
            if b is not None:
                add(i, a * b)
            wedge = self.space.wedge_map(i)
            if len(wedge) < len(vt):
                pairs = ((j, k, vt[j]) for j, k in wedge.items() if j in vt)
            else:
                pairs = ((j, wedge[j], b) for j, b in vt.items() if j in wedge)
            for j, k, b in pairs:
                s = ha * a * b
                add(i, s)
                add(j, s)
                add(k, -s)
        return AlgebraElement(self.dimension, out)

    def multiply_point(self, u: AlgebraElement, j: int) -> AlgebraElement:
        """``u . x_j`` without building the point vector."""
        out: dict[int, object] = {}
        a = u.terms.get(j)
        if a is not None:
            out[j] = a
        ha = self.half_alpha
        wedge = self.space.wedge_map(j)
        for i, a in u.terms.items():
            k = wedge.get(i)
            if k is None:
                continue
            s = ha * a
            for t, c in ((i, s), (j, s), (k, -s)):
                x = out.get(t)
                out[t] = c if x is None else x + c
        return AlgebraElement(self.dimension, out)

    def ad_rows(self, u: AlgebraElement) -> list[dict]:
        """Sparse rows of ``ad(u)``: entry ``[i][j]`` is the ``x_i`` coefficient of ``u.x_j``."""
        rows: list[dict] = [dict() for _ in range(self.dimension)]
        for j in range(self.dimension):
            for i, c in self.multiply_point(u, j).terms.items():
                rows[i][j] = c
        return rows

    def ad_matrix(self, u: AlgebraElement) -> list[list]:
        """Dense ``ad(u)``; column ``j`` is ``u . x_j``."""
        z = self.zero
        out = [[z] * self.dimension for _ in range(self.dimension)]
        for i, r in enumerate(self.ad_rows(u)):
            for j, c in r.items():
                out[i][j] = c
        return out

    def apply_ad(self, u: AlgebraElement, v: AlgebraElement) -> AlgebraElement:
        return self.multiply(u, v)

    # -- identities -------------------------------------------------------------

    def parabolic_identity(self, h: Iterable[int]) -> AlgebraElement:
        """Identity of the subalgebra spanned by the closed set ``h``.

        Each connected component ``C`` (regular of degree ``k``) contributes
        ``sum(C) / (1 + a k / 2)``.
        """
        hs = frozenset(h)
        if not self.space.is_closed(hs):
            raise NotClosed("subspace is not wedge-closed")
        terms: dict[int, object] = {}
        for comp in self.space.components(hs):
            k = regularity(self.space, comp)
            if k is None:
                raise ValueError(f"component {comp} is not regular")
            denom = self.one + self.half_alpha * k
            if not denom:
                raise DegenerateAlpha(f"a = {format_scalar(self.alpha)} kills the identity of component {comp}")
            c = self.one / denom
            for p in comp:
                terms[p] = c
        return AlgebraElement(self.dimension, terms)

    # -- form -------------------------------------------------------------------

    def _require_charge(self):
        if self.charge is None:
            raise ChargeUnset("the form needs a charge c")
        return self.charge

    def gram(self) -> list[list]:
        c = self._require_charge()
        diag = 2 * c
        off = c * self.alpha
        z = self.zero
        n = self.dimension
        return [
            [diag if i == j else (off if self.space.collinear(i, j) else z) for j in range(n)]
            for i in range(n)
        ]

    def form(self, u: AlgebraElement, v: AlgebraElement):
        c = self._require_charge()
        diag = 2 * c
        off = c * self.alpha
        acc = self.zero
        for i, a in u.terms.items():
            b = v.terms.get(i)
            if b is not None:
                acc = acc + diag * a * b
            s = None
            wedge = self.space.wedge_map(i)
            for j, b in v.terms.items():
                if j in wedge:
                    s = b if s is None else s + b
            if s is not None:
                acc = acc + off * a * s
        return acc

    def central_charge(self, e: AlgebraElement):
        """Half the form value ``(e, e)``."""
        return self.form(e, e) / 2

    def radical(self) -> list[AlgebraElement]:
        """Basis of the kernel of the Gram matrix."""
        c = self._require_charge()
        n = self.dimension
        diag, off = 2 * c, c * self.alpha
        rows = []
        for i in range(n):
            r = {}
            if diag:
                r[i] = diag
            if off:
                for j in self.space.neighbours(i):
                    r[j] = off
            rows.append(r)
        return [AlgebraElement(n, v) for v in kernel(rows, n, self.one)]

    def form_association_failures(self, limit: int | None = None) -> list[tuple[int, int, int]]:
        """Basis triples with ``(x y, z) != (x, y z)`` (empty when the form associates)."""
        n = self.dimension
        pts = [self.point(i) for i in range(n)]
        fails = []
        for x in range(n):
            for y in range(n):
                xy = self.multiply(pts[x], pts[y])
                for z in range(n):
                    if self.form(xy, pts[z]) != self.form(pts[x], self.multiply(pts[y], pts[z])):
                        fails.append((x, y, z))
                        if limit is not None and len(fails) >= limit:
                            return fails
        return fails
