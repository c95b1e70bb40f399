from fractions import Fraction

import sympy
from hypothesis import given
from hypothesis import strategies as st

from matsuo_lab.polynomial import Polynomial, format_poly, parse_poly

x = sympy.Symbol("x")
polys = st.lists(st.fractions(min_value=-6, max_value=6, max_denominator=4), min_size=1, max_size=5).map(Polynomial)


def to_sympy(p):
    return sympy.Poly(list(reversed([sympy.Rational(c.numerator, c.denominator) for c in p.coefficients])) or [0], x)


def test_degree_and_evaluation():
    p = Polynomial([1, 0, 2])
    assert p.degree == 2
    assert p(Fraction(1, 2)) == Fraction(3, 2)


def test_division():
    q, r = divmod(Polynomial([-1, 0, 1]), Polynomial([-1, 1]))
    assert q == Polynomial([1, 1]) and not r


@given(polys, polys, polys)
def test_gcd_matches_sympy(a, b, c):
    g = (a * c).gcd(b * c)
    expected = sympy.gcd(to_sympy(a * c), to_sympy(b * c))
    if not g:
        assert expected.is_zero
        return
    assert to_sympy(g.monic()).as_expr() == expected.monic().as_expr()


@given(polys)
def test_text_round_trip(p):
    assert parse_poly(format_poly(p.coefficients)) == p
