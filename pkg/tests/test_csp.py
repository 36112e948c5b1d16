from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bigembed.csp import EQ, GE, LE, Model, propagate, solve_all
from helpers import cartesian_solutions


def test_add_var_domains():
    m = Model()
    assert [m.add_var(0, 1), m.add_var(0, 0), m.add_var(0, 3)] == [0, 1, 2]
    assert (m.lower, m.upper) == ([0, 0, 0], [1, 0, 3])
    with pytest.raises(ValueError):
        m.add_var(2, 1)


def test_add_linear_errors():
    m = Model()
    x = m.add_var(0, 1)
    with pytest.raises(ValueError):
        m.add_linear([], EQ, 0)
    with pytest.raises(ValueError):
        m.add_linear([(x, 1), (x, -1)], EQ, 0)
    with pytest.raises(ValueError):
        m.add_linear([(7, 1)], EQ, 0)
    with pytest.raises(ValueError):
        m.add_linear([(x, 1)], "<", 0)


def test_two_binaries_summing_to_one():
    m = Model()
    x, y = m.add_var(0, 1), m.add_var(0, 1)
    m.add_linear([(x, 1), (y, 1)], EQ, 1)
    assert list(solve_all(m)) == [(0, 1), (1, 0)]


def test_contradictory_bounds_are_infeasible():
    m = Model()
    x = m.add_var(0, 1)
    m.add_linear([(x, 1)], GE, 1)
    m.add_linear([(x, 1)], LE, 0)
    assert propagate(m) is None
    assert list(solve_all(m)) == []


def test_weighted_sum():
    m = Model()
    x, y = m.add_var(0, 1), m.add_var(0, 1)
    m.add_linear([(x, 2), (y, 1)], LE, 2)
    assert sorted(solve_all(m)) == [(0, 0), (0, 1), (1, 0)]


def test_propagation_examples():
    m = Model()
    x, y = m.add_var(1, 1), m.add_var(0, 1)
    m.add_linear([(x, 1), (y, 1)], EQ, 1)
    assert propagate(m) == ([1, 0], [1, 0])
    m = Model()
    x = m.add_var(0, 1)
    m.add_linear([(x, 1)], GE, 1)
    assert propagate(m) == ([1], [1])


def test_empty_model_has_one_empty_solution():
    assert list(solve_all(Model())) == [()]


def test_pairwise_at_most_one():
    m = Model()
    v = [m.add_var(0, 1) for _ in range(3)]
    for i in range(3):
        for j in range(i + 1, 3):
            m.add_linear([(v[i], 1), (v[j], 1)], LE, 1)
    assert len(list(solve_all(m))) == 4


def test_contradiction_flag_empties_the_stream():
    m = Model()
    m.add_var(0, 1)
    m.add_contradiction("empty sum equals one")
    assert list(solve_all(m)) == [] and propagate(m) is None


def test_custom_branching_hook():
    m = Model()
    x, y = m.add_var(0, 1), m.add_var(0, 1)
    m.add_linear([(x, 1), (y, 1)], EQ, 1)

    def last_first(lo, hi):
        free = [v for v in range(len(lo)) if lo[v] != hi[v]]
        return free[-1] if free else None

    assert list(solve_all(m, select_var=last_first)) == [(1, 0), (0, 1)]


@st.composite
def models(draw):
    m = Model()
    n = draw(st.integers(1, 6))
    for _ in range(n):
        lo = draw(st.integers(-2, 2))
        m.add_var(lo, lo + draw(st.integers(0, 3)))
    for _ in range(draw(st.integers(0, 5))):
        k = draw(st.integers(1, n))
        vs = draw(st.lists(st.integers(0, n - 1), min_size=k, max_size=k, unique=True))
        terms = [(v, draw(st.integers(-3, 3).filter(bool))) for v in vs]
        m.add_linear(terms, draw(st.sampled_from([LE, EQ, GE])), draw(st.integers(-4, 4)))
    return m


@settings(max_examples=300, deadline=None)
@given(models())
def test_solve_all_matches_the_cartesian_oracle(m):
    got = list(solve_all(m, checked=True))
    assert len(got) == len(set(got))
    assert sorted(got) == sorted(cartesian_solutions(m))
    assert list(solve_all(m)) == got


@settings(max_examples=300, deadline=None)
@given(models())
def test_propagation_is_sound(m):
    box = propagate(m, checked=True)
    sols = cartesian_solutions(m)
    if box is None:
        assert sols == []
        return
    lo, hi = box
    assert all(lo[i] <= s[i] <= hi[i] for s in sols for i in range(len(s)))


@st.composite
def binary_models(draw):
    m = Model()
    n = draw(st.integers(10, 16))
    for _ in range(n):
        m.add_var(0, 1)
    for _ in range(draw(st.integers(1, 8))):
        vs = draw(st.lists(st.integers(0, n - 1), min_size=2, max_size=5, unique=True))
        m.add_linear([(v, draw(st.integers(-2, 2).filter(bool))) for v in vs],
                     draw(st.sampled_from([LE, EQ, GE])), draw(st.integers(-1, 2)))
    return m


@settings(max_examples=40, deadline=None)
@given(binary_models())
def test_larger_binary_models(m):
    assert sorted(solve_all(m)) == sorted(cartesian_solutions(m))


def test_twenty_variable_model():
    m = Model()
    v = [m.add_var(0, 1) for _ in range(20)]
    for i in range(0, 20, 2):
        m.add_linear([(v[i], 1), (v[i + 1], 1)], EQ, 1)
    m.add_linear([(x, 1) for x in v[::2]], LE, 3)
    sols = list(solve_all(m))
    from math import comb
    assert len(sols) == sum(comb(10, k) for k in range(4))
    assert sols == sorted(sols)
