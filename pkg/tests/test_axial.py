import warnings
from fractions import Fraction
from functools import lru_cache

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from matsuo_lab.axial import (
    Grading,
    NotIdempotent,
    VacuousSeressWarning,
    associates_check,
    commute,
    decompose_identity,
    eigendecompose,
    fixes,
    fusion_table,
    grading_partition,
    id_spectrum_candidates,
    involution_signature,
    is_idempotent,
    is_seress,
    joint_decomposition,
    jordan_table,
    linear_idempotents,
    make_table,
    miyamoto,
    parabolic_item,
    point_involution,
)
from matsuo_lab.cases import chain_seeds, letters_subspace, orthogonal_table
from matsuo_lab.families import orthogonal_space, symmetric_space, transposition_index
from matsuo_lab.fischer import double_graph
from matsuo_lab.linalg import rational_spectrum
from matsuo_lab.matsuo import AlgebraElement, MatsuoAlgebra
from matsuo_lab.scalars import ALPHA, QQa, specialize

ONE, ZERO = QQa.one, QQa.zero
JORDAN = {frozenset((p, q)): r for p, q, r in jordan_table(ALPHA).pairs()}


def as_rule(t):
    return {frozenset((p, q)): r for p, q, r in t.pairs()}


def check_eigenvectors(A, e, dec):
    for lam, v in dec.basis():
        assert A.multiply(e, v) == v.scale(lam)


def check_specialised_spectrum(A, e, dec, value=Fraction(3, 11)):
    """Second route: the spectrum of ad(e) at a rational alpha, found from the characteristic polynomial."""
    m = [[specialize(x, value) for x in row] for row in A.ad_matrix(e)]
    expected = rational_spectrum(m)
    got = {}
    for lam, k in dec.multiplicities.items():
        v = specialize(lam, value)
        got[v] = got.get(v, 0) + k
    assert got == expected


# -- points --------------------------------------------------------------------


@pytest.mark.parametrize("g", [symmetric_space(3), orthogonal_space(4)], ids=str)
def test_point_is_jordan_axis(g):
    A = MatsuoAlgebra(g, ALPHA)
    e = A.point(0)
    dec = eigendecompose(A, e, [ONE, ZERO, ALPHA])
    assert set(dec.eigenvalues) == {ONE, ZERO, ALPHA} and dec.diagonalisable
    check_eigenvectors(A, e, dec)
    check_specialised_spectrum(A, e, dec)
    t = fusion_table(A, e, dec)
    assert as_rule(t) == JORDAN
    gr = grading_partition(t)
    assert set(gr.odd) == {ALPHA} and set(gr.even) == {ONE, ZERO}
    assert is_seress(t) and associates_check(A, e, dec)


def test_point_at_rational_alpha_uses_charpoly():
    A = MatsuoAlgebra(symmetric_space(3), Fraction(1, 4))
    dec = eigendecompose(A, A.point(2))
    assert dec.multiplicities == {1: 1, 0: 3, Fraction(1, 4): 2}


def test_not_idempotent():
    A = MatsuoAlgebra(symmetric_space(2), ALPHA)
    with pytest.raises(NotIdempotent):
        eigendecompose(A, A.point(0) + A.point(1))
    assert not is_idempotent(A, A.point(0).scale(QQa(2)))


# -- parabolic identities ------------------------------------------------------------


def test_identity_of_whole_space():
    g = symmetric_space(4)
    A = MatsuoAlgebra(g, ALPHA)
    e, dec = decompose_identity(A, range(g.point_count))
    assert dec.multiplicities == {ONE: g.point_count}
    t = fusion_table(A, e, dec)
    assert t.star(ONE, ONE) == {ONE}
    assert grading_partition(t) is None
    res = miyamoto(A, e, dec, Grading(even=(ONE,), odd=()))
    assert res.map.is_identity() and res.automorphism


def test_whole_space_candidates():
    g = symmetric_space(4)
    assert set(id_spectrum_candidates(g, range(g.point_count))) == {ONE, ZERO}


@pytest.mark.parametrize("n", range(3, 7))
def test_identity_of_hyperplane(n):
    g = symmetric_space(n)
    h = letters_subspace(g, n - 1)
    A = MatsuoAlgebra(g, ALPHA)
    e, dec = decompose_identity(A, h)
    eta = n * ALPHA / (2 + ALPHA * (2 * n - 4))
    assert set(dec.eigenvalues) == {ONE, ZERO, eta}
    assert dec.multiplicities[ZERO] == 1 and dec.multiplicities[ONE] == len(h)
    assert set(id_spectrum_candidates(g, h)) == {ONE, ZERO, eta}
    check_eigenvectors(A, e, dec)
    if n <= 4:
        check_specialised_spectrum(A, e, dec)
    # 1-eigenspace is the span of h
    assert all(set(v.terms) <= set(h) for v in dec.space(ONE))


@pytest.mark.parametrize("m,i", [(5, 3), (5, 4), (6, 4)])
def test_orthogonal_identity_table(m, i):
    g = orthogonal_space(m)
    base_n = m - 1
    h = letters_subspace(symmetric_space(base_n), i - 1)
    half = symmetric_space(base_n).point_count
    h = h + [x + half for x in h]
    A = MatsuoAlgebra(g, ALPHA)
    e, dec = decompose_identity(A, h)
    assert len(dec.eigenvalues) == 4
    t = fusion_table(A, e, dec)
    allowed = orthogonal_table(i, ALPHA)
    assert t.is_contained_in(allowed)
    gr = grading_partition(t)
    assert gr is not None and len(gr.odd) == 1


# -- fusion verdicts ------------------------------------------------------------------


def test_seress_verdicts():
    assert is_seress(jordan_table(ALPHA))
    bad = make_table((ONE, ZERO, ALPHA), {(ONE, ZERO): [ALPHA], (ALPHA, ALPHA): [ONE, ZERO]})
    assert not is_seress(bad)
    odd_closed = make_table((ONE, ZERO, ALPHA), {(ALPHA, ALPHA): [ALPHA], (ONE, ALPHA): [ALPHA]})
    gr = grading_partition(odd_closed)
    assert gr is None or ALPHA not in gr.odd


def test_vacuous_seress_warns():
    t = make_table((ALPHA,), {(ALPHA, ALPHA): [ALPHA]})
    with pytest.warns(VacuousSeressWarning):
        assert is_seress(t)


# -- Miyamoto involutions ----------------------------------------------------------------


def test_point_miyamoto_is_wedge_map():
    g = symmetric_space(4)
    A = MatsuoAlgebra(g, ALPHA)
    x = 3
    e = A.point(x)
    dec = eigendecompose(A, e, [ONE, ZERO, ALPHA])
    gr = grading_partition(fusion_table(A, e, dec))
    res = miyamoto(A, e, dec, gr)
    assert res.automorphism
    perm = res.map.point_permutation()
    for y in range(g.point_count):
        assert perm[y] == (g.wedge(x, y) if g.collinear(x, y) else y)
    sig = involution_signature(res.map, A)
    assert sig.moved_pairs == "collinear" and sig.moved_points == g.degree(x)
    assert involution_signature(point_involution(A, x), A) == sig


def test_identity_signature():
    A = MatsuoAlgebra(symmetric_space(3), ALPHA)
    ident = point_involution(A, 0)
    ident.columns = [A.point(j) for j in range(A.dimension)]
    sig = involution_signature(ident, A)
    assert sig.moved_points == 0 and sig.minus_dimension == 0 and sig.moved_pairs == "none"


# -- commuting idempotents and linear closure ----------------------------------------------


def test_chain_differences():
    n = 3
    base = symmetric_space(n)
    N = base.point_count
    A = MatsuoAlgebra(double_graph(base), ALPHA)
    ids = {i: decompose_identity(A, letters_subspace(base, i)) for i in range(1, n + 1)}
    for i in range(2, n + 1):
        (top, dtop), (low, dlow) = ids[i], ids[i - 1]
        assert fixes(A, top, low) and commute(A, top, low)
        dec = joint_decomposition(A, dtop, low, dlow)
        e = top - low
        assert is_idempotent(A, e) and dec.diagonalisable
        check_eigenvectors(A, e, dec)


@lru_cache(maxsize=None)
def enumerated(n):
    base = symmetric_space(n)
    A = MatsuoAlgebra(double_graph(base), ALPHA)
    L0 = [parabolic_item(A, h, decompose=True) for h in chain_seeds(n)]
    return A, linear_idempotents(A, L0, 4, decompose=True)


def test_linear_idempotents_contain_chain():
    A, res = enumerated(3)
    assert res.complete and len(res.items) == 31
    elements = {item.element for item in res.items}
    base = symmetric_space(3)
    N = base.point_count
    for i in range(1, 4):
        h = letters_subspace(base, i)
        low = letters_subspace(base, i - 1)
        idh = A.parabolic_identity(h)
        idl = A.parabolic_identity(low) if low else AlgebraElement(A.dimension)
        hat = A.parabolic_identity(h + [x + N for x in h])
        assert idh - idl in elements
        assert hat - idh in elements
    assert AlgebraElement(A.dimension) not in elements
    for item in res.items:
        assert item.reconstruct(A) == item.element
        assert is_idempotent(A, item.element)


@settings(max_examples=31)
@given(st.integers(0, 30))
def test_seress_iff_associates(k):
    # idempotents of A(3)+- in enumeration order, each with a full eigenbasis
    A, res = enumerated(3)
    item = res.items[k]
    dec = item.decomposition
    assert dec.diagonalisable
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", VacuousSeressWarning)
        seress = is_seress(fusion_table(A, item.element, dec))
    assert seress == associates_check(A, item.element, dec)
    assert seress
