"""Univariate polynomials over the rationals.

Two layers live here.  The ``zp_*`` functions work on integer coefficient
tuples (lowest degree first, no trailing zeros) and are the hot path used by
:class:`matsuo_lab.scalars.RationalFunction`.  :class:`Polynomial` is the
user-facing value type with :class:`fractions.Fraction` coefficients.

Greatest common divisors use the subresultant pseudo-remainder sequence, which
keeps every intermediate polynomial integral without the coefficient explosion
of the naive Euclidean algorithm over the integers.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

ZPoly = tuple  # tuple[int, ...]

ZP_ZERO: ZPoly = ()
ZP_ONE: ZPoly = (1,)


def zp_trim(a: Sequence[int]) -> ZPoly:
    n = len(a)
    while n and not a[n - 1]:
        n -= 1
    return tuple(a[:n])


def zp_add(a: ZPoly, b: ZPoly) -> ZPoly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return zp_trim(out)


def zp_sub(a: ZPoly, b: ZPoly) -> ZPoly:
    if len(a) >= len(b):
        out = list(a)
        for i, c in enumerate(b):
            out[i] -= c
    else:
        out = [-c for c in b]
        for i, c in enumerate(a):
            out[i] += c
    return zp_trim(out)


def zp_neg(a: ZPoly) -> ZPoly:
    return tuple(-c for c in a)


def zp_scale(a: ZPoly, k: int) -> ZPoly:
    if not k:
        return ZP_ZERO
    return tuple(c * k for c in a)


def zp_mul(a: ZPoly, b: ZPoly) -> ZPoly:
    if not a or not b:
        return ZP_ZERO
    if len(a) == 1:
        return zp_scale(b, a[0])
    if len(b) == 1:
        return zp_scale(a, b[0])
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return zp_trim(out)


def zp_content(a: ZPoly) -> int:
    g = 0
    for c in a:
        g = gcd(g, c)
        if g == 1:
            break
    return g


def zp_primitive(a: ZPoly) -> ZPoly:
    """Primitive part with positive leading coefficient."""
    if not a:
        return a
    g = zp_content(a)
    if a[-1] < 0:
        g = -g
    if g == 1:
        return a
    return tuple(c // g for c in a)


def zp_eval(a: ZPoly, x: Fraction) -> Fraction:
    # homogeneous Horner keeps everything in integers
    p, q = x.numerator, x.denominator
    acc = 0
    qk = 1
    for c in reversed(a):
        acc = acc * p + c * qk
        qk *= q
    n = len(a)
    if n == 0:
        return Fraction(0)
    return Fraction(acc, q ** (n - 1))


def zp_prem(a: ZPoly, b: ZPoly) -> ZPoly:
    """Pseudo-remainder of ``lc(b)**(deg a - deg b + 1) * a`` by ``b``."""
    db = len(b) - 1
    lb = b[-1]
    r = list(a)
    e = len(a) - len(b) + 1
    while len(r) - 1 >= db and r:
        k = len(r) - 1 - db
        lr = r[-1]
        r = [c * lb for c in r]
        for i, c in enumerate(b):
            r[i + k] -= lr * c
        e -= 1
        r = list(zp_trim(r))
    if e > 0:
        f = lb ** e
        r = [c * f for c in r]
    return tuple(r)


def zp_divexact(a: ZPoly, b: ZPoly) -> ZPoly:
    """Quotient ``a / b`` when ``b`` divides ``a`` in Z[x]."""
    if len(b) == 1:
        d = b[0]
        return tuple(c // d for c in a)
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    q = [0] * (len(a) - db)
    for k in range(len(q) - 1, -1, -1):
        c = r[k + db]
        if c:
            t, m = divmod(c, lb)
            if m:
                raise ArithmeticError("inexact polynomial division")
            q[k] = t
            for i, bc in enumerate(b):
                r[k + i] -= t * bc
    if any(r[:db]):
        raise ArithmeticError("inexact polynomial division")
    return zp_trim(q)


def zp_gcd(a: ZPoly, b: ZPoly) -> ZPoly:
    """Primitive gcd over Q[x], normalised to a positive leading coefficient."""
    if not a:
        return zp_primitive(b) if b else ZP_ONE
    if not b:
        return zp_primitive(a)
    if len(a) == 1 or len(b) == 1:
        return ZP_ONE
    if len(a) < len(b):
        a, b = b, a
    if len(b) == 2:
        # linear: test the single root directly
        p, q = -b[0], b[1]
        acc = 0
        qk = 1
        for c in reversed(a):
            acc = acc * p + c * qk
            qk *= q
        return zp_primitive(b) if acc == 0 else ZP_ONE
    a = zp_primitive(a)
    b = zp_primitive(b)
    g = h = 1
    while True:
        d = len(a) - len(b)
        r = zp_prem(a, b)
        if not r:
            return zp_primitive(b)
        if len(r) == 1:
            return ZP_ONE
        a = b
        div = g * h ** d
        b = tuple(c // div for c in r)
        g = a[-1]
        if d == 0:
            pass
        elif d == 1:
            h = g
        else:
            h = g ** d // h ** (d - 1)


def zp_from_fractions(coeffs: Iterable[Fraction]) -> tuple[ZPoly, int]:
    """Return ``(p, d)`` with ``p`` integral and ``coeffs == p / d``."""
    coeffs = [Fraction(c) for c in coeffs]
    d = 1
    for c in coeffs:
        d = d * c.denominator // gcd(d, c.denominator)
    return zp_trim([int(c * d) for c in coeffs]), d


class Polynomial:
    """Polynomial in the indeterminate ``a`` with rational coefficients.

    Coefficients are stored lowest degree first; the zero polynomial has no
    coefficients.
    """

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: Iterable = ()):
        cs = [Fraction(c) for c in coefficients]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coefficients: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def from_zpoly(cls, p: ZPoly, denominator: int = 1) -> "Polynomial":
        return cls(Fraction(c, denominator) for c in p)

    def to_zpoly(self) -> tuple[ZPoly, int]:
        return zp_from_fractions(self.coefficients)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def leading(self) -> Fraction:
        return self.coefficients[-1] if self.coefficients else Fraction(0)

    def __bool__(self) -> bool:
        return bool(self.coefficients)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Polynomial):
            return self.coefficients == other.coefficients
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coefficients)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        a, b = self.coefficients, other.coefficients
        n = max(len(a), len(b))
        return Polynomial(
            (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
        )

    def __neg__(self) -> "Polynomial":
        return Polynomial(-c for c in self.coefficients)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        a, b = self.coefficients, other.coefficients
        if not a or not b:
            return Polynomial()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] += x * y
        return Polynomial(out)

    def __divmod__(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coefficients)
        b = other.coefficients
        q = [Fraction(0)] * max(len(r) - len(b) + 1, 0)
        for k in range(len(q) - 1, -1, -1):
            t = r[k + len(b) - 1] / b[-1]
            q[k] = t
            for i, c in enumerate(b):
                r[k + i] -= t * c
        return Polynomial(q), Polynomial(r)

    def monic(self) -> "Polynomial":
        if not self.coefficients:
            return self
        lc = self.coefficients[-1]
        return Polynomial(c / lc for c in self.coefficients)

    def gcd(self, other: "Polynomial") -> "Polynomial":
        """Monic gcd (zero only when both inputs are zero)."""
        if not self and not other:
            return Polynomial()
        g = zp_gcd(self.to_zpoly()[0], other.to_zpoly()[0])
        return Polynomial(g).monic()

    def __call__(self, x) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def __str__(self) -> str:
        return format_poly(self.coefficients)

    def __repr__(self) -> str:
        return f"Polynomial({str(self)!r})"


def format_poly(coeffs: Sequence[Fraction]) -> str:
    """``c0 + c1*a + c2*a^2`` with zero terms omitted."""
    parts: list[str] = []
    for k, c in enumerate(coeffs):
        if not c:
            continue
        mag = abs(c) if parts else c
        body = str(mag)
        if k == 1:
            body += "*a"
        elif k > 1:
            body += f"*a^{k}"
        if parts:
            parts.append(("- " if c < 0 else "+ ") + body)
        else:
            parts.append(body)
    return " ".join(parts) if parts else "0"


def parse_poly(text: str) -> Polynomial:
    """Inverse of :func:`format_poly`; also accepts ``a`` and ``-a`` shorthands."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial")
    terms: list[str] = []
    start = 0
    for i in range(1, len(s)):
        if s[i] in "+-" and s[i - 1] not in "*^+-":
            terms.append(s[start:i])
            start = i
    terms.append(s[start:])
    coeffs: dict[int, Fraction] = {}
    for t in terms:
        sign = 1
        while t and t[0] in "+-":
            if t[0] == "-":
                sign = -sign
            t = t[1:]
        if not t:
            raise ValueError(f"bad polynomial term in {text!r}")
        if "a" in t:
            head, _, tail = t.partition("a")
            head = head.rstrip("*")
            c = Fraction(head) if head else Fraction(1)
            if tail:
                if not tail.startswith("^"):
                    raise ValueError(f"bad exponent in {text!r}")
                k = int(tail[1:])
            else:
                k = 1
        else:
            c = Fraction(t)
            k = 0
        coeffs[k] = coeffs.get(k, Fraction(0)) + sign * c
    n = max(coeffs) + 1
    return Polynomial(coeffs.get(i, 0) for i in range(n))
