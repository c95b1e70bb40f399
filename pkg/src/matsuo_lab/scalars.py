"""Exact scalars: rationals and rational functions in one indeterminate.

Rationals are plain :class:`fractions.Fraction` values.  Rational functions in
``a`` (standing for alpha) are :class:`RationalFunction` values kept in a
canonical reduced form, so equality and hashing are structural.

The two kinds never mix silently: combining a ``Fraction`` with a
``RationalFunction`` raises :class:`MixedFieldVariant`.  Plain ``int`` values
are accepted on either side since they are unambiguous.  To move a rational
into the function field, coerce it explicitly with ``QQa(x)``.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Union

from .polynomial import (
    Polynomial,
    ZP_ONE,
    format_poly,
    parse_poly,
    zp_add,
    zp_content,
    zp_divexact,
    zp_eval,
    zp_from_fractions,
    zp_gcd,
    zp_mul,
    zp_neg,
    zp_scale,
    zp_sub,
    zp_trim,
)


class ScalarError(ArithmeticError):
    """Base class for scalar contract violations."""


class DivisionByZero(ScalarError, ZeroDivisionError):
    pass


class MixedFieldVariant(ScalarError, TypeError):
    pass


class PoleAtValue(ScalarError):
    pass


def _normalize_content(num: tuple, den: tuple) -> tuple[tuple, tuple]:
    g = gcd(zp_content(num), zp_content(den))
    if den[-1] < 0:
        g = -g
    if g != 1:
        num = tuple(c // g for c in num)
        den = tuple(c // g for c in den)
    return num, den


class RationalFunction:
    """Element of Q(a), stored as coprime integer polynomials ``num/den``.

    Canonical form: ``gcd(num, den) = 1`` over Q, ``den`` has positive leading
    coefficient and the joint integer content of ``num`` and ``den`` is 1.  Zero
    is ``()/(1,)``.  The public ``numerator``/``denominator`` properties give
    the rational-coefficient form with a monic denominator.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=(), den=ZP_ONE, *, _canonical: bool = False):
        if _canonical:
            self.num, self.den = num, den
        else:
            self.num, self.den = self._reduce(tuple(num), tuple(den))
        self._hash = None

    @staticmethod
    def _reduce(num: tuple, den: tuple) -> tuple[tuple, tuple]:
        num, den = zp_trim(num), zp_trim(den)
        if not den:
            raise DivisionByZero("zero denominator")
        if not num:
            return (), ZP_ONE
        g = zp_gcd(num, den)
        if len(g) > 1:
            num, den = zp_divexact(num, g), zp_divexact(den, g)
        return _normalize_content(num, den)

    @classmethod
    def _make(cls, num: tuple, den: tuple) -> "RationalFunction":
        return cls(num, den, _canonical=True)

    @classmethod
    def from_polynomials(cls, num: Polynomial, den: Polynomial) -> "RationalFunction":
        pn, dn = zp_from_fractions(num.coefficients)
        pd, dd = zp_from_fractions(den.coefficients)
        return cls(zp_scale(pn, dd), zp_scale(pd, dn))

    @classmethod
    def constant(cls, value) -> "RationalFunction":
        q = Fraction(value)
        if not q:
            return ZERO
        return cls._make(*_normalize_content((q.numerator,), (q.denominator,)))

    # -- views ---------------------------------------------------------------

    @property
    def numerator(self) -> Polynomial:
        return Polynomial.from_zpoly(self.num, self.den[-1])

    @property
    def denominator(self) -> Polynomial:
        return Polynomial.from_zpoly(self.den, self.den[-1])

    def is_constant(self) -> bool:
        return len(self.num) <= 1 and len(self.den) == 1

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        if not self.num:
            return Fraction(0)
        return Fraction(self.num[0], self.den[0])

    # -- value semantics ------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, RationalFunction):
            return self.num == other.num and self.den == other.den
        if isinstance(other, int):
            return self.den == ZP_ONE and (self.num == ((other,) if other else ()))
        return NotImplemented

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = self._hash = hash((self.num, self.den))
        return h

    def __bool__(self) -> bool:
        return bool(self.num)

    def __str__(self) -> str:
        lc = self.den[-1]
        num = format_poly([Fraction(c, lc) for c in self.num])
        den = format_poly([Fraction(c, lc) for c in self.den])
        return f"({num})/({den})"

    def __repr__(self) -> str:
        return f"RationalFunction({str(self)!r})"

    def __reduce__(self):
        return (RationalFunction, (self.num, self.den))

    # -- arithmetic ------------------------------------------------------------

    @staticmethod
    def _coerce(other) -> "RationalFunction":
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, bool):
            raise MixedFieldVariant("bool is not a scalar")
        if isinstance(other, int):
            if not other:
                return ZERO
            return RationalFunction._make((other,), ZP_ONE)
        if isinstance(other, Fraction):
            raise MixedFieldVariant("cannot combine a rational with a rational function")
        return NotImplemented

    def __neg__(self) -> "RationalFunction":
        return RationalFunction._make(zp_neg(self.num), self.den)

    def __pos__(self) -> "RationalFunction":
        return self

    def __add__(self, other) -> "RationalFunction":
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if not o.num:
            return self
        if not self.num:
            return o
        n1, d1, n2, d2 = self.num, self.den, o.num, o.den
        if len(d1) == 1 and len(d2) == 1:
            a, b = d1[0], d2[0]
            g = gcd(a, b)
            num = zp_add(zp_scale(n1, b // g), zp_scale(n2, a // g))
            if not num:
                return ZERO
            den = (a // g * b,)
            return RationalFunction._make(*_normalize_content(num, den))
        if d1 == d2:
            num = zp_add(n1, n2)
            if not num:
                return ZERO
            return RationalFunction(num, d1)
        g = zp_gcd(d1, d2)
        if len(g) == 1:
            num = zp_add(zp_mul(n1, d2), zp_mul(n2, d1))
            if not num:
                return ZERO
            return RationalFunction._make(*_normalize_content(num, zp_mul(d1, d2)))
        d1g = zp_divexact(d1, g)
        d2g = zp_divexact(d2, g)
        t = zp_add(zp_mul(n1, d2g), zp_mul(n2, d1g))
        if not t:
            return ZERO
        g2 = zp_gcd(t, g)
        if len(g2) > 1:
            t = zp_divexact(t, g2)
            den = zp_mul(d1g, zp_divexact(d2, g2))
        else:
            den = zp_mul(d1g, d2)
        return RationalFunction._make(*_normalize_content(t, den))

    __radd__ = __add__

    def __sub__(self, other) -> "RationalFunction":
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other) -> "RationalFunction":
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other) -> "RationalFunction":
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if not self.num or not o.num:
            return ZERO
        n1, d1, n2, d2 = self.num, self.den, o.num, o.den
        if len(d1) == 1 and len(d2) == 1:
            return RationalFunction._make(*_normalize_content(zp_mul(n1, n2), (d1[0] * d2[0],)))
        g1 = zp_gcd(n1, d2)
        if len(g1) > 1:
            n1, d2 = zp_divexact(n1, g1), zp_divexact(d2, g1)
        g2 = zp_gcd(n2, d1)
        if len(g2) > 1:
            n2, d1 = zp_divexact(n2, g2), zp_divexact(d1, g2)
        return RationalFunction._make(*_normalize_content(zp_mul(n1, n2), zp_mul(d1, d2)))

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if not self.num:
            raise DivisionByZero("inverse of zero")
        return RationalFunction._make(*_normalize_content(self.den, self.num))

    def __truediv__(self, other) -> "RationalFunction":
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other) -> "RationalFunction":
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, k: int) -> "RationalFunction":
        if k < 0:
            return self.inverse() ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def specialize(self, value) -> Fraction:
        value = Fraction(value)
        d = zp_eval(self.den, value)
        if not d:
            raise PoleAtValue(f"denominator of {self} vanishes at a = {value}")
        return zp_eval(self.num, value) / d


ZERO = RationalFunction((), ZP_ONE, _canonical=True)
ONE = RationalFunction((1,), ZP_ONE, _canonical=True)
ALPHA = RationalFunction((0, 1), ZP_ONE, _canonical=True)

Scalar = Union[Fraction, RationalFunction]


class RationalField:
    """The field Q; elements are ``Fraction`` values."""

    name = "QQ"
    generic = False
    zero = Fraction(0)
    one = Fraction(1)

    def __call__(self, x) -> Fraction:
        if isinstance(x, RationalFunction):
            if x.is_constant():
                return x.constant_value()
            raise MixedFieldVariant(f"{x} is not a rational number")
        if isinstance(x, str):
            return self.parse(x)
        return Fraction(x)

    def is_element(self, x) -> bool:
        return isinstance(x, (Fraction, int)) and not isinstance(x, bool)

    def parse(self, text: str) -> Fraction:
        text = text.strip()
        if "a" in text:
            raise ValueError(f"{text!r} is not a rational number")
        return Fraction(text)

    def format(self, x) -> str:
        return format_scalar(self(x))

    def __repr__(self) -> str:
        return "QQ"


class FunctionField:
    """The field Q(a) of rational functions in ``a``."""

    name = "QQ(a)"
    generic = True
    zero = ZERO
    one = ONE
    alpha = ALPHA

    def __call__(self, x) -> RationalFunction:
        if isinstance(x, RationalFunction):
            return x
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, Polynomial):
            return RationalFunction.from_polynomials(x, Polynomial([1]))
        return RationalFunction.constant(x)

    def is_element(self, x) -> bool:
        return isinstance(x, RationalFunction)

    def parse(self, text: str) -> RationalFunction:
        return parse_scalar(text, generic=True)

    def format(self, x) -> str:
        return format_scalar(self(x))

    def __repr__(self) -> str:
        return "QQ(a)"


QQ = RationalField()
QQa = FunctionField()


def field_of(x) -> Union[RationalField, FunctionField]:
    if isinstance(x, RationalFunction):
        return QQa
    if isinstance(x, (Fraction, int)):
        return QQ
    raise TypeError(f"{x!r} is not a scalar")


def format_scalar(x: Scalar) -> str:
    """Canonical string form, bit-exact across runs."""
    if isinstance(x, RationalFunction):
        return str(x)
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        return str(x)
    raise TypeError(f"{x!r} is not a scalar")


def _split_quotient(text: str) -> tuple[str, str] | None:
    # "(num)/(den)" at the top level
    if not text.startswith("("):
        return None
    depth = 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth == 0:
                rest = text[i + 1 :].strip()
                if not rest:
                    return text[1:i], "1"
                if rest.startswith("/"):
                    den = rest[1:].strip()
                    if den.startswith("(") and den.endswith(")"):
                        den = den[1:-1]
                    return text[1:i], den
                return None
    raise ValueError(f"unbalanced parentheses in {text!r}")


def parse_scalar(text: str, generic: bool | None = None) -> Scalar:
    """Parse a canonical scalar string.

    ``generic=None`` infers the field from the text: anything mentioning ``a``
    or written as a parenthesised quotient is a rational function.
    """
    text = text.strip()
    if not text:
        raise ValueError("empty scalar")
    quotient = _split_quotient(text)
    is_rf = quotient is not None or "a" in text
    if generic is None:
        generic = is_rf
    if not generic:
        if is_rf:
            raise MixedFieldVariant(f"{text!r} is a rational function")
        return Fraction(text)
    if quotient is None:
        num, den = parse_poly(text), Polynomial([1])
    else:
        num, den = parse_poly(quotient[0]), parse_poly(quotient[1])
    if not den:
        raise DivisionByZero(f"zero denominator in {text!r}")
    return RationalFunction.from_polynomials(num, den)


def specialize(s: Scalar, value) -> Fraction:
    """Evaluate ``s`` at ``a = value``; rationals are returned unchanged."""
    if isinstance(s, RationalFunction):
        return s.specialize(value)
    if isinstance(s, (Fraction, int)):
        return Fraction(s)
    raise TypeError(f"{s!r} is not a scalar")


def check_same_field(a, b) -> None:
    if isinstance(a, RationalFunction) != isinstance(b, RationalFunction):
        if isinstance(a, int) or isinstance(b, int):
            return
        raise MixedFieldVariant(f"{a!r} and {b!r} live in different fields")
