from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from teslerforge.core import (
    SupportPattern,
    TildeUpperTri,
    UpperTri,
    hook_matrix,
    hook_sum,
    hook_sum_tilde,
    hook_vector,
    positions,
    rat,
    support,
    tesler_hrep,
)
from teslerforge.errors import IndexOutOfRange, InvalidInput, ShapeMismatch
from teslerforge.polyhedra import enumerate_vertices

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=6)


@st.composite
def upper(draw, n=None):
    n = n or draw(st.integers(1, 5))
    return UpperTri(n, draw(st.lists(rationals, min_size=len(positions(n)), max_size=len(positions(n)))))


@st.composite
def same_size_pair(draw):
    n = draw(st.integers(1, 5))
    return draw(upper(n)), draw(upper(n))


def test_rat_is_canonical_and_exact():
    x = rat("6/4")
    assert (x.numerator, x.denominator) == (3, 2)
    assert rat(-3) == Fraction(-3)
    with pytest.raises(InvalidInput):
        rat(0.5)
    with pytest.raises(InvalidInput):
        rat(True)
    with pytest.raises(InvalidInput):
        rat("1/0")


def test_hook_sum_of_small_example():
    m = UpperTri.from_rows([[1, 2, 3], [4, 5], [10]])
    assert hook_sum(m, 2) == 7
    assert hook_vector(m) == (6, 7, 2)


def test_hook_sum_trivial_cases():
    assert hook_vector(UpperTri.zeros(4)) == (0, 0, 0, 0)
    assert hook_vector(UpperTri.diag([3, Fraction(1, 2), -1])) == (3, Fraction(1, 2), -1)
    assert hook_vector(UpperTri.unit(4, 1, 3)) == (1, 0, -1, 0)
    assert hook_vector(UpperTri.unit(4, 2, 2)) == (0, 1, 0, 0)


def test_hook_sum_rejects_bad_index():
    m = UpperTri.zeros(3)
    with pytest.raises(IndexOutOfRange):
        hook_sum(m, 0)
    with pytest.raises(IndexOutOfRange):
        hook_sum(m, 4)


def test_hook_sum_tilde_examples():
    b = TildeUpperTri.from_rows([[-1, 2, -3, -4], [-5, 6, 7], [-8, 9]])
    assert b.n == 4
    assert hook_sum_tilde(b, 1) == -6
    assert hook_sum_tilde(TildeUpperTri.zeros(3), 2) == 0
    assert hook_sum_tilde(TildeUpperTri.from_map(3, {(1, 2): 1}), 2) == -1
    with pytest.raises(IndexOutOfRange):
        hook_sum_tilde(b, 4)


def test_tilde_rows_accept_both_layouts():
    short = TildeUpperTri.from_rows([[1, 2, 3], [4, 5]])
    full = TildeUpperTri.from_rows([[1, 2, 3], [4, 5], []])
    assert short == full and short.n == 3 and len(short.entries) == 5


def test_shapes_are_checked():
    with pytest.raises(ShapeMismatch):
        UpperTri.from_rows([[1, 2], [3, 4]])
    with pytest.raises(ShapeMismatch):
        UpperTri(3, [0] * 5)
    with pytest.raises(ShapeMismatch):
        UpperTri.zeros(2) + UpperTri.zeros(3)
    with pytest.raises(IndexOutOfRange):
        UpperTri.zeros(2)[2, 1]


def test_support_examples():
    v = UpperTri.from_rows([[0, 2, 0, 0], [0, 0, 4], [3, 0], [8]])
    assert support(v).ones() == [(1, 2), (2, 4), (3, 3), (4, 4)]
    assert support(UpperTri.zeros(3)).ones() == []
    assert all(support(UpperTri(3, [1] * 6)).bits)


def test_tesler_hrep_counts():
    h2 = tesler_hrep((1, 1))
    assert (len(h2.eq), len(h2.ineq)) == (2, 2)
    h4 = tesler_hrep((1, 1, 1, 1))
    assert (len(h4.eq), len(h4.ineq)) == (4, 9)
    assert len(enumerate_vertices(tesler_hrep((1, 1, 1))).vertices) == 6


def test_hook_matrix_drops_last_incidence_row():
    # every column of the full incidence matrix sums to zero, so the dropped
    # sink row is minus the sum of the kept ones
    n = 3
    rows = hook_matrix(n)
    sink = [-sum(r[c] for r in rows) for c in range(len(positions(n)))]
    diag_cols = [k for k, (i, j) in enumerate(positions(n)) if i == j]
    assert [k for k, x in enumerate(sink) if x] == diag_cols
    assert all(sink[k] == -1 for k in diag_cols)


@given(same_size_pair(), rationals)
def test_hook_vector_is_linear(pair, c):
    m1, m2 = pair
    lhs = hook_vector(m1 + m2)
    assert lhs == tuple(x + y for x, y in zip(hook_vector(m1), hook_vector(m2)))
    assert hook_vector(c * m1) == tuple(c * x for x in hook_vector(m1))


@given(upper())
def test_tilde_hook_sums_match_after_projection(m):
    b = m.project()
    for i in range(1, m.n):
        assert hook_sum_tilde(b, i) == hook_sum(m, i)


@given(upper())
def test_total_net_flow_leaves_through_the_sink(m):
    assert sum(hook_vector(m)) == sum(m[i, i] for i in range(1, m.n + 1))


@st.composite
def patterns(draw):
    n = draw(st.integers(1, 4))
    size = len(positions(n))
    bits = lambda: tuple(draw(st.lists(st.integers(0, 1), min_size=size, max_size=size)))
    return SupportPattern(n, bits()), SupportPattern(n, bits()), SupportPattern(n, bits())


@settings(max_examples=200)
@given(patterns())
def test_support_order_is_a_partial_order(triple):
    s, t, u = triple
    assert s <= s
    if s <= t and t <= s:
        assert s == t
    if s <= t and t <= u:
        assert s <= u


@given(upper())
def test_support_marks_nonzeros(m):
    pattern = support(m)
    for (i, j), x in m.items():
        assert pattern[i, j] == int(x != 0)
