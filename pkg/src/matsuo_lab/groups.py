"""Concrete group elements used to generate 3-transposition groups.

Three representations are supported and never mixed within one computation:

* :class:`Permutation` of ``{0, ..., n-1}``,
* :class:`AffinePair` ``(v, s)`` acting as ``x -> v + s.x`` on ``F_3^m`` modulo the
  all-ones vector,
* :class:`SignedOrthogonal`, a rational matrix preserving the standard inner
  product (reflections of root systems and signed permutations).

All of them are immutable and hashable, multiply with ``*``, and expose
``inverse()`` and ``is_identity()``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


class NotInvolution(ValueError):
    pass


@dataclass(frozen=True)
class Permutation:
    """Permutation given by its image list; ``(p * q)(x) = p(q(x))``."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"{self.images} is not a bijection")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @classmethod
    def transposition(cls, n: int, i: int, j: int) -> "Permutation":
        im = list(range(n))
        im[i], im[j] = j, i
        return cls(tuple(im))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if not isinstance(other, Permutation):
            return NotImplemented
        im = self.images
        return Permutation(tuple(im[x] for x in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, x in enumerate(self.images):
            inv[x] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def support(self) -> tuple[int, ...]:
        return tuple(i for i, x in enumerate(self.images) if i != x)

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for i in range(len(self.images)):
            if i in seen or self.images[i] == i:
                continue
            cyc = [i]
            seen.add(i)
            j = self.images[i]
            while j != i:
                cyc.append(j)
                seen.add(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)


@dataclass(frozen=True)
class AffinePair:
    """Element ``(v, s)`` of ``F_3^m : Sym(m)`` modulo the all-ones vector.

    The vector is stored as the coset representative with first coordinate 0.
    Multiplication is ``(v1, s1)(v2, s2) = (v1 + s1.v2, s1 s2)`` where
    ``(s.v)[s(i)] = v[i]``.
    """

    vector: tuple[int, ...]
    permutation: Permutation

    modulus = 3

    def __post_init__(self):
        if len(self.vector) != self.permutation.degree:
            raise ValueError("vector and permutation sizes differ")
        v = self.vector
        if v and v[0] != 0 or any(not 0 <= x < self.modulus for x in v):
            object.__setattr__(self, "vector", self._canonical(v))

    @classmethod
    def _canonical(cls, v: Sequence[int]) -> tuple[int, ...]:
        if not v:
            return ()
        s = v[0]
        return tuple((x - s) % cls.modulus for x in v)

    @classmethod
    def make(cls, vector: Sequence[int], permutation: Permutation) -> "AffinePair":
        return cls(cls._canonical(vector), permutation)

    def __mul__(self, other: "AffinePair") -> "AffinePair":
        if not isinstance(other, AffinePair):
            return NotImplemented
        m = len(self.vector)
        moved = [0] * m
        for i, x in enumerate(other.vector):
            moved[self.permutation.images[i]] = x
        v = [(a + b) % self.modulus for a, b in zip(self.vector, moved)]
        return AffinePair(self._canonical(v), self.permutation * other.permutation)

    def inverse(self) -> "AffinePair":
        sinv = self.permutation.inverse()
        m = len(self.vector)
        moved = [0] * m
        for i, x in enumerate(self.vector):
            moved[sinv.images[i]] = -x
        return AffinePair(self._canonical(moved), sinv)

    def is_identity(self) -> bool:
        return not any(self.vector) and self.permutation.is_identity()

    def __str__(self) -> str:
        return f"[{''.join(map(str, self.vector))}|{self.permutation}]"


def _compact(x):
    q = Fraction(x)
    return q.numerator if q.denominator == 1 else q


@dataclass(frozen=True)
class SignedOrthogonal:
    """Orthogonal rational matrix (rows as tuples of Fractions)."""

    matrix: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        m = tuple(tuple(_compact(x) for x in row) for row in self.matrix)
        object.__setattr__(self, "matrix", m)
        n = len(m)
        for i in range(n):
            for j in range(i, n):
                dot = sum(m[k][i] * m[k][j] for k in range(n))
                if dot != (1 if i == j else 0):
                    raise ValueError("matrix does not preserve the inner product")

    @classmethod
    def reflection(cls, root: Sequence) -> "SignedOrthogonal":
        r = [Fraction(x) for x in root]
        rr = sum(x * x for x in r)
        n = len(r)
        return cls(
            tuple(
                tuple((1 if i == j else 0) - 2 * r[i] * r[j] / rr for j in range(n))
                for i in range(n)
            )
        )

    @classmethod
    def signed_permutation(cls, images: Sequence[int], signs: Sequence[int]) -> "SignedOrthogonal":
        """Matrix sending ``e_i`` to ``signs[i] * e_images[i]``."""
        n = len(images)
        rows = [[Fraction(0)] * n for _ in range(n)]
        for i, (j, s) in enumerate(zip(images, signs)):
            rows[j][i] = Fraction(s)
        return cls(tuple(tuple(r) for r in rows))

    @property
    def dimension(self) -> int:
        return len(self.matrix)

    def __mul__(self, other: "SignedOrthogonal") -> "SignedOrthogonal":
        if not isinstance(other, SignedOrthogonal):
            return NotImplemented
        a, b = self.matrix, other.matrix
        n = len(a)
        cols = list(zip(*b))
        out = tuple(
            tuple(_compact(sum(x * y for x, y in zip(a[i], cols[j]) if x and y)) for j in range(n))
            for i in range(n)
        )
        res = object.__new__(SignedOrthogonal)
        object.__setattr__(res, "matrix", out)
        return res

    def inverse(self) -> "SignedOrthogonal":
        res = object.__new__(SignedOrthogonal)
        object.__setattr__(res, "matrix", tuple(zip(*self.matrix)))
        return res

    def is_identity(self) -> bool:
        return all(
            x == (1 if i == j else 0) for i, row in enumerate(self.matrix) for j, x in enumerate(row)
        )

    def apply(self, v: Sequence) -> tuple[Fraction, ...]:
        return tuple(sum(Fraction(x) * y for x, y in zip(row, v)) for row in self.matrix)

    def __str__(self) -> str:
        return "[" + "; ".join(" ".join(str(x) for x in row) for row in self.matrix) + "]"


GroupElement = Permutation | AffinePair | SignedOrthogonal


def element_order(g, cap: int = 7) -> int:
    """Order of ``g``, or ``cap`` if it exceeds ``cap - 1``."""
    x = g
    for k in range(1, cap):
        if x.is_identity():
            return k
        x = x * g
    return cap


def conjugate(c, d):
    """``d c d^-1``; for an involution ``d`` this is ``d c d``."""
    return d * c * d.inverse()
