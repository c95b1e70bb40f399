from fractions import Fraction

import pytest
import sympy
from sympy.polys.matrices import DomainMatrix
from hypothesis import given
from hypothesis import strategies as st

from matsuo_lab.cases import letters_subspace
from matsuo_lab.families import orthogonal_space, symmetric_space
from matsuo_lab.fischer import FischerSpace, double_graph
from matsuo_lab.matsuo import AlgebraElement, ChargeUnset, DegenerateAlpha, MatsuoAlgebra
from matsuo_lab.scalars import ALPHA, QQa

a = sympy.Symbol("a")
QUARTER, HALF = Fraction(1, 4), Fraction(1, 2)


def sym_rank(rows):
    n, m = len(rows), len(rows[0])
    entries = [[sympy.Rational(x.numerator, x.denominator) for x in r] for r in rows]
    return DomainMatrix.from_list_sympy(n, m, entries).convert_to(sympy.QQ).rank()


def sym_ad(g, x):
    """ad(x) by expanding the product rule symbolically; column j is x * y_j."""
    n = g.point_count
    m = sympy.zeros(n, n)
    for j in range(n):
        if j == x:
            m[x, x] = 1
        elif g.collinear(x, j):
            m[x, j] += a / 2
            m[j, j] += a / 2
            m[g.wedge(x, j), j] -= a / 2
    return m


def as_sympy(s):
    return sympy.sympify(str(s).replace("^", "**"))


def test_points_are_idempotent_and_orthogonality():
    g = symmetric_space(3)
    A = MatsuoAlgebra(g, ALPHA)
    for x in range(g.point_count):
        assert A.multiply(A.point(x), A.point(x)) == A.point(x)
        for y in range(g.point_count):
            if x != y and not g.collinear(x, y):
                assert not A.multiply(A.point(x), A.point(y))


def test_line_product():
    A = MatsuoAlgebra(symmetric_space(2), ALPHA)
    x, y, z = (A.point(i) for i in range(3))
    assert A.multiply(x, y) == (x + y - z).scale(ALPHA / 2)


def test_ad_isolated_point():
    A = MatsuoAlgebra(FischerSpace(2, []), ALPHA)
    assert A.ad_matrix(A.point(0)) == [[QQa.one, QQa.zero], [QQa.zero, QQa.zero]]


@pytest.mark.parametrize("g", [symmetric_space(2), symmetric_space(3), orthogonal_space(4)], ids=str)
def test_ad_matches_symbolic_expansion(g):
    A = MatsuoAlgebra(g, ALPHA)
    for x in range(g.point_count):
        ours = A.ad_matrix(A.point(x))
        ref = sym_ad(g, x)
        n = g.point_count
        # our matrices are indexed [row][col] with x * y_j in column j
        assert all(sympy.simplify(as_sympy(ours[i][j]) - ref[i, j]) == 0 for i in range(n) for j in range(n))


def test_commutative():
    g = orthogonal_space(4)
    A = MatsuoAlgebra(g, ALPHA)
    u = A.element({0: 1, 3: ALPHA, 7: -2})
    v = A.element({1: ALPHA + 1, 3: 1, 11: 5})
    assert A.multiply(u, v) == A.multiply(v, u)


def test_parabolic_identities():
    g = symmetric_space(2)
    A = MatsuoAlgebra(g, ALPHA)
    assert A.parabolic_identity([1]) == A.point(1)
    assert A.parabolic_identity([0, 1, 2]) == A.sum_of_points([0, 1, 2]).scale(1 / (1 + ALPHA))


@pytest.mark.parametrize("g", [symmetric_space(4), orthogonal_space(4), double_graph(symmetric_space(3))], ids=str)
def test_identity_is_unit(g):
    A = MatsuoAlgebra(g, ALPHA)
    e = A.parabolic_identity(range(g.point_count))
    for y in range(g.point_count):
        assert A.multiply(e, A.point(y)) == A.point(y)


def test_degenerate_alpha():
    A = MatsuoAlgebra(symmetric_space(2), Fraction(-1))
    with pytest.raises(DegenerateAlpha):
        A.parabolic_identity([0, 1, 2])


def test_form_needs_charge():
    A = MatsuoAlgebra(symmetric_space(2), ALPHA)
    with pytest.raises(ChargeUnset):
        A.central_charge(A.point(0))


def test_point_charge_and_form():
    c = QQa("2/3")
    A = MatsuoAlgebra(symmetric_space(3), ALPHA, c)
    assert A.central_charge(A.point(0)) == c
    g = A.space
    x, y = next((i, j) for i in range(6) for j in range(6) if g.collinear(i, j))
    assert A.form(A.point(x), A.point(y)) == c * ALPHA


@pytest.mark.parametrize("g", [symmetric_space(3), orthogonal_space(4)], ids=str)
def test_form_associates(g):
    assert MatsuoAlgebra(g, ALPHA, QQa(1)).form_association_failures(limit=1) == []


@pytest.mark.parametrize("n", range(2, 6))
def test_radical_vanishes_at_quarter(n):
    for g in (symmetric_space(n), double_graph(symmetric_space(n))):
        A = MatsuoAlgebra(g, QUARTER, HALF)
        assert A.radical() == []
        assert sym_rank(A.gram()) == g.point_count


def test_zero_charge_radical_is_everything():
    A = MatsuoAlgebra(symmetric_space(3), QUARTER, 0)
    assert len(A.radical()) == 6


def test_d4_radical_dimension():
    A = MatsuoAlgebra(orthogonal_space(4), QUARTER, HALF)
    assert len(A.radical()) == 12 - sym_rank(A.gram())


def test_chain_central_charge():
    # cc(e_i) for A_{i-1} < A_i, from the sum of identity pieces
    c = QQa(1)
    for n in (4, 5):
        base = symmetric_space(n)
        A = MatsuoAlgebra(double_graph(base), ALPHA, c)
        for i in range(2, n + 1):
            e = A.parabolic_identity(letters_subspace(base, i)) - A.parabolic_identity(letters_subspace(base, i - 1))
            expected = c / 2 * i * (2 + ALPHA * (i - 3)) / ((1 + ALPHA * (i - 1)) * (1 + ALPHA * (i - 2)))
            assert A.central_charge(e) == expected


@given(st.lists(st.integers(-3, 3), min_size=6, max_size=6), st.lists(st.integers(-3, 3), min_size=6, max_size=6))
def test_bilinear_symmetric(u, v):
    A = MatsuoAlgebra(symmetric_space(3), ALPHA, QQa(1))
    U, V = A.element(u), A.element(v)
    assert A.form(U, V) == A.form(V, U)
    assert A.multiply(U, V) == A.multiply(V, U)


def test_element_round_trip():
    A = MatsuoAlgebra(symmetric_space(2), ALPHA)
    u = A.element({0: ALPHA, 2: 3})
    assert A.element_from_json(u.to_json(A.zero)) == u
    assert isinstance(u, AlgebraElement) and u.support() == [0, 2]
