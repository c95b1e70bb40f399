from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from matsuo_lab.linalg import (
    BasisSolver,
    IrrationalSpectrum,
    SingularMatrix,
    charpoly_integer,
    dense_to_rows,
    in_span,
    kernel,
    matvec,
    rank,
    rational_spectrum,
)
from matsuo_lab.scalars import ALPHA, QQa

t = sympy.Symbol("t")


def square(n):
    return st.lists(st.lists(st.integers(-5, 5), min_size=n, max_size=n), min_size=n, max_size=n)


@given(st.integers(1, 6).flatmap(square))
def test_charpoly_matches_sympy(m):
    expected = sympy.Matrix(m).charpoly(t).all_coeffs()[::-1]
    assert charpoly_integer(m) == [int(c) for c in expected]


@given(st.integers(1, 5).flatmap(square))
def test_kernel_is_annihilated(m):
    rows = dense_to_rows([[Fraction(x) for x in r] for r in m])
    ker = kernel(rows, len(m), Fraction(1))
    assert len(ker) == len(m) - sympy.Matrix(m).rank()
    for v in ker:
        assert not any(matvec(rows, v).values())


def test_rank_and_span():
    rows = [{0: Fraction(1), 1: Fraction(1)}, {1: Fraction(1)}, {0: Fraction(2), 1: Fraction(3)}]
    assert rank(rows) == 2
    assert in_span(rows[:2], {0: Fraction(5)})
    assert not in_span(rows[:1], {1: Fraction(1)})


def test_kernel_over_function_field():
    # [[1, a], [a, a^2]] has kernel spanned by (-a, 1)
    rows = [{0: QQa(1), 1: ALPHA}, {0: ALPHA, 1: ALPHA * ALPHA}]
    (v,) = kernel(rows, 2, QQa(1))
    assert v[0] == -ALPHA * v[1]


def test_basis_solver_coordinates():
    basis = [{0: Fraction(1), 1: Fraction(1)}, {0: Fraction(1), 1: Fraction(-1)}]
    solver = BasisSolver(basis, 2, Fraction(1))
    assert solver.coordinates({0: Fraction(2)}) == {0: Fraction(1), 1: Fraction(1)}
    with pytest.raises(SingularMatrix):
        BasisSolver([basis[0], basis[0]], 2, Fraction(1))


def test_rational_spectrum():
    assert rational_spectrum([[2, 1], [1, 2]]) == {Fraction(3): 1, Fraction(1): 1}
    assert rational_spectrum([[Fraction(1, 2), 0], [0, Fraction(1, 2)]]) == {Fraction(1, 2): 2}
    with pytest.raises(IrrationalSpectrum):
        rational_spectrum([[0, 2], [1, 0]])
