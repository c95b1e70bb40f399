import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from matsuo_lab.families import (
    SpecError,
    affine3_space,
    build_named,
    complete_graph,
    orthogonal_space,
    parse_space_spec,
    signed_permutation_space,
    symmetric_space,
    transposition_index,
    w3_affine_space,
)
from matsuo_lab.fischer import (
    FischerSpace,
    InvalidFischerSpace,
    NotClosed,
    boundary_graph,
    build_from_involutions,
    check_hypothesis_vreg,
    double_graph,
    integer_spectrum,
    is_very_regular,
    regularity,
)
from matsuo_lab.groups import Permutation
from matsuo_lab.iso import graph_isomorphic, isomorphic


# -- brute-force oracles ------------------------------------------------------


def sym_transpositions(n):
    """Transpositions of Sym(n) as image tuples, with lines from order-3 products."""
    ts = []
    for i, j in itertools.combinations(range(n), 2):
        p = list(range(n))
        p[i], p[j] = j, i
        ts.append(tuple(p))
    return ts


def compose(p, q):
    return tuple(p[q[i]] for i in range(len(p)))


def brute_lines(ts):
    index = {t: k for k, t in enumerate(ts)}
    lines = set()
    for a, b in itertools.combinations(range(len(ts)), 2):
        x, y = ts[a], ts[b]
        z = compose(compose(x, y), x)
        if z != y:
            lines.add(tuple(sorted((a, b, index[z]))))
    return lines


def brute_closure(ts, seed):
    group = set(seed)
    while True:
        new = {compose(compose(x, y), x) for x in group for y in group} | group
        if new == group:
            return group
        group = new


def brute_isomorphic(g1, g2):
    lines2 = set(map(tuple, map(sorted, g2.lines)))
    for perm in itertools.permutations(range(g1.point_count)):
        if {tuple(sorted(perm[p] for p in line)) for line in g1.lines} == lines2:
            return True
    return False


# -- construction -------------------------------------------------------------


def test_sym4_transpositions():
    gens = [Permutation.transposition(4, i, i + 1) for i in range(3)]
    g = build_from_involutions(gens)
    assert g.point_count == 6 and g.line_count == 4
    assert g.line_count == len(brute_lines(sym_transpositions(4)))
    # every transposition lies on two lines
    assert all(sum(p in line for line in g.lines) == 2 for p in range(6))


def test_single_generator():
    g = build_from_involutions([Permutation.transposition(2, 0, 1)])
    assert g.point_count == 1 and g.line_count == 0


def test_small_named_spaces():
    a2 = build_named("A2")
    assert a2.point_count == 3 and [tuple(sorted(l)) for l in a2.lines] == [(0, 1, 2)]
    assert regularity(a2) == 2
    for n in range(1, 7):
        assert symmetric_space(n).point_count == n * (n + 1) // 2
        assert orthogonal_space(n + 1).point_count == n * (n + 1)


def test_affine3_plane():
    g = affine3_space(2)
    assert g.point_count == 9 and g.line_count == 12
    assert all(g.collinear(i, j) for i, j in itertools.combinations(range(9), 2))


def test_w3_affine_counts():
    # A(n) inside plus n(n+1) translates of the k = 3 orbit
    for n in (1, 2, 3):
        assert w3_affine_space(n).point_count == n * (n + 1) // 2 + n * (n + 1)


def test_a3_matches_brute_force():
    g = symmetric_space(3)
    assert g.line_count == len(brute_lines(sym_transpositions(4)))


def test_transposition_index():
    idx = transposition_index(3)
    assert idx[(0, 1)] == 0 and len(idx) == 6


def test_parse_space_spec():
    assert parse_space_spec("A4pm").point_count == 20
    assert parse_space_spec("Aff3:2").point_count == 9
    with pytest.raises(SpecError):
        parse_space_spec("Q9")


def test_invalid_space_rejected():
    with pytest.raises(InvalidFischerSpace):
        FischerSpace(4, [(0, 1, 2), (0, 1, 3)])


def test_text_and_json_round_trip():
    g = orthogonal_space(4)
    assert FischerSpace.from_text(g.to_text()) == g
    assert FischerSpace.from_json(g.to_json()) == g
    head, first = g.to_text().splitlines()[:2]
    assert head == "points 12"
    i, j, k = map(int, first.split())
    assert i < j and g.wedge(i, j) == k


# -- doubles and closures ------------------------------------------------------


def test_double_of_point():
    g = double_graph(symmetric_space(1))
    assert g.point_count == 2 and g.line_count == 0


def test_double_of_a2_is_a3():
    dg = double_graph(symmetric_space(2))
    res = isomorphic(dg, symmetric_space(3))
    assert res and brute_isomorphic(dg, symmetric_space(3))


def test_orthogonal_constructions_agree():
    for m in (3, 4, 5):
        assert isomorphic(orthogonal_space(m, cross_check=False), signed_permutation_space(m))


def test_closure_examples():
    g = symmetric_space(3)
    idx = transposition_index(3)
    assert g.closure([idx[(0, 1)], idx[(1, 2)]]) == {idx[(0, 1)], idx[(1, 2)], idx[(0, 2)]}
    assert len(g.closure([idx[(0, 1)], idx[(1, 2)], idx[(2, 3)]])) == 6
    assert g.closure([idx[(0, 1)], idx[(2, 3)]]) == {idx[(0, 1)], idx[(2, 3)]}


def test_closure_matches_group_closure():
    ts = sym_transpositions(5)
    g = symmetric_space(4)
    # point order of A(n) is lexicographic on the transposed pair, as is ts
    for seed in itertools.combinations(range(len(ts)), 3):
        assert g.closure(seed) == {ts.index(t) for t in brute_closure(ts, [ts[s] for s in seed])}


SPACES = [symmetric_space(4), orthogonal_space(4), affine3_space(2), double_graph(symmetric_space(3))]


@given(st.sampled_from(SPACES), st.data())
def test_closure_operator_laws(g, data):
    pts = st.sets(st.integers(0, g.point_count - 1), max_size=4)
    s, t = data.draw(pts), data.draw(pts)
    cs = g.closure(s)
    assert s <= cs  # extensive
    assert g.closure(cs) == cs  # idempotent
    assert cs <= g.closure(s | t)  # monotone
    assert g.is_closed(cs)


# -- boundary graphs and regularity ----------------------------------------------


def top_letters(n):
    """A(n-1) inside A(n): transpositions avoiding the last letter."""
    return [k for (i, j), k in transposition_index(n).items() if j < n]


@pytest.mark.parametrize("n", range(2, 8))
def test_boundary_of_a_is_complete(n):
    bg = boundary_graph(symmetric_space(n), top_letters(n))
    assert bg.size == n
    assert graph_isomorphic(bg.adjacency, complete_graph(n).adjacency)


def test_boundary_of_whole_space_is_empty():
    g = symmetric_space(4)
    assert boundary_graph(g, range(g.point_count)).size == 0


def test_boundary_needs_closed_set():
    with pytest.raises(NotClosed):
        boundary_graph(symmetric_space(3), [0, 1])


@pytest.mark.parametrize("g", [symmetric_space(3), symmetric_space(4), orthogonal_space(4)], ids=str)
def test_double_over_copy_is_original(g):
    dg = double_graph(g)
    bg = boundary_graph(dg, range(g.point_count))
    assert list(bg.points) == list(range(g.point_count, 2 * g.point_count))
    assert graph_isomorphic(bg.adjacency, g.adjacency_matrix())


def test_double_commutes_with_boundary():
    g, n = symmetric_space(4), symmetric_space(4).point_count
    h = top_letters(4)
    dbg = boundary_graph(double_graph(g), h + [x + n for x in h])
    bg = boundary_graph(g, h)
    assert dbg.size == 2 * bg.size
    assert set(dbg.points) == set(bg.points) | {p + n for p in bg.points}


def test_shipped_boundaries_are_simple():
    for n in range(2, 6):
        assert boundary_graph(symmetric_space(n), top_letters(n)).is_simple()
    g = orthogonal_space(5)
    h = list(range(3)) + list(range(10, 13))
    assert boundary_graph(g, g.closure(h)).is_simple()


def test_regularity_values():
    for n in range(2, 7):
        assert regularity(symmetric_space(n)) == 2 * (n - 1)
        assert regularity(orthogonal_space(n + 1)) == 4 * (n - 1)
    single = symmetric_space(1)
    assert regularity(single) == 0 and len(single.components()) == 1


@given(st.sampled_from([symmetric_space(n) for n in range(2, 6)] + [orthogonal_space(m) for m in (4, 5)]
                       + [affine3_space(2), w3_affine_space(2)]))
def test_perron_eigenvalue_is_regularity(g):
    ev = np.linalg.eigvalsh(np.array(g.adjacency_matrix(), dtype=float))
    spec = integer_spectrum(g.adjacency_matrix())
    top = max(spec)
    assert top == regularity(g) and spec[top] == 1
    assert abs(ev[-1] - float(top)) < 1e-9


def test_integer_spectrum_examples():
    assert integer_spectrum(complete_graph(5).adjacency) == {Fraction(4): 1, Fraction(-1): 4}
    assert integer_spectrum(symmetric_space(3).adjacency_matrix()) == {4: 1, 0: 3, -2: 2}
    assert integer_spectrum(orthogonal_space(5).adjacency_matrix()) == {12: 1, 2: 4, 0: 10, -4: 5}


# -- very regular pairs ------------------------------------------------------------


@pytest.mark.parametrize("n", range(3, 8))
def test_a_embedding_is_very_regular(n):
    v = is_very_regular(symmetric_space(n), top_letters(n))
    assert v.very_regular and v.k == n - 1


def brute_maximal(g, h):
    n = g.point_count
    for r in range(len(h) + 1, n):
        for s in itertools.combinations(range(n), r):
            if set(h) < set(s) and g.is_closed(s):
                return False
    return True


def test_maximality_matches_enumeration():
    g = symmetric_space(3)
    line = sorted(g.lines[0])
    # a line of the dual affine plane is a copy of A(2), which is maximal
    assert is_very_regular(g, line).h_maximal == brute_maximal(g, line) is True
    point = [0]  # lies in a line, hence not maximal
    assert not is_very_regular(g, point).h_maximal and not brute_maximal(g, point)


def test_disconnected_space():
    g = double_graph(symmetric_space(2))
    g2 = FischerSpace(6, [(0, 1, 2)], name="line+3")
    assert not is_very_regular(g2, [0]).g_connected
    assert g.is_connected()


@pytest.mark.parametrize("g", [symmetric_space(4), affine3_space(3), orthogonal_space(4)], ids=str)
def test_hypothesis_holds(g):
    rep = check_hypothesis_vreg(g)
    assert rep.complete and not rep.failures and rep.pairs_checked > 0


def not_adjacent(g, h):
    """Points outside ``h`` collinear with no point of ``h``."""
    return {y for y in range(g.point_count) if y not in h and not any(g.collinear(x, y) for x in h)}


@given(st.sampled_from([symmetric_space(4), orthogonal_space(4), orthogonal_space(5), affine3_space(3)]), st.data())
def test_wedge_stability_of_far_points(g, data):
    seed = data.draw(st.sets(st.integers(0, g.point_count - 1), min_size=1, max_size=3))
    h = g.closure(seed)
    if not is_very_regular(g, h).very_regular:
        return
    far = not_adjacent(g, h)
    for x, y in itertools.combinations(sorted(far), 2):
        if g.collinear(x, y):
            assert g.wedge(x, y) in far


@pytest.mark.parametrize("n", range(3, 7))
def test_wedge_stability_on_chain(n):
    g = symmetric_space(n)
    h = top_letters(n)
    far = not_adjacent(g, h)
    for x, y in itertools.combinations(sorted(far), 2):
        if g.collinear(x, y):
            assert g.wedge(x, y) in far
