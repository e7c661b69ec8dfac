import random

import pytest
from hypothesis import given, settings, strategies as st

from floorgw.diagram import MultiplicityVector
from floorgw.invariants import (
    InvariantQuery,
    ZeroSurfaceDegree,
    adjunction_bound,
    compute_F,
    compute_N,
    gamma,
    query_from_point,
)
from floorgw.enumeration import BudgetExceeded, EnumerationBudget, InconsistentQuery
from floorgw.verify import ordered_y_sum, random_query


@pytest.mark.parametrize("w", range(1, 21))
def test_gamma_closed_forms(w):
    assert gamma(0, w) == w * w
    assert 30 * gamma(1, w) == (w - 1) * w * (w + 1) * (w * w + 1)


def test_gamma_small_weights_vanish():
    assert gamma(2, 2) == 0
    assert gamma(2, 3) == 1


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_methods_agree(seed):
    eq = random_query(random.Random(seed))
    q = query_from_point(eq.a, eq.k, eq.g, eq.x, eq.c_divs)
    values = {compute_N(q, method=m) for m in ("census", "structures", "enumerate")}
    assert len(values) == 1


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6), st.randoms(use_true_random=False))
def test_F_symmetric(seed, rnd):
    q = random_query(random.Random(seed))
    x, y = list(q.x), list(q.c_divs)
    base = compute_F(q.a, q.k, q.g, x, y)
    rnd.shuffle(x)
    rnd.shuffle(y)
    assert compute_F(q.a, q.k, q.g, x, y) == base


@pytest.mark.parametrize("point", [
    (2, 1, 0, (-2, 1), (-1,)),
    (2, 1, 0, (-1,), (-1, -1, 1)),
    (3, 1, 0, (-2,), (-1, 1, -1)),
])
def test_ordered_white_sum(point):
    # summing over distinct orders of y equals the labeled sum over the repetition factor
    q = query_from_point(*point)
    distinct, labeled, rep = ordered_y_sum(q)
    assert distinct * rep == labeled
    assert distinct == compute_N(q)


@pytest.mark.parametrize("a,b,k", [(1, 1, 1), (2, 1, 1), (2, 2, 0), (3, 1, 1)])
def test_vanishing_above_adjunction_bound(a, b, k):
    g = adjunction_bound(a, b, k) + 1
    mv = MultiplicityVector((), (a * k + b,), (), (b,))
    assert compute_N(InvariantQuery(a, b, k, g, mv)) == 0


def test_query_validation():
    with pytest.raises(ZeroSurfaceDegree):
        InvariantQuery(0, 1, 1, 0, MultiplicityVector((), (1,), (), (1,)))
    with pytest.raises(InconsistentQuery):
        InvariantQuery(2, 1, 1, 0, MultiplicityVector((), (1,), (), (1,)))
    with pytest.raises(InconsistentQuery):
        query_from_point(2, 1, 0, (-1, 0), (-1,))
    with pytest.raises(InconsistentQuery):
        query_from_point(2, 1, 0, (-1,), (-2,))


def test_point_conditions():
    q = query_from_point(3, 2, 1, (-2, -2, -1, 1), (-1, 2, -3, 1, -1))
    assert q.label() == "N_1^{12,201,1,11}(3,4,2)"
    assert q.l == 2 * 3 + 1 + 3 + 2 - 1


def test_large_value_and_budget():
    assert compute_F(3, 2, 1, (-2, -2, -1, 1), (-3, -1, -1, 1, 2)) == 842517000
    q = query_from_point(3, 2, 1, (-2, -2, -1, 1), (-3, -1, -1, 1, 2))
    with pytest.raises(BudgetExceeded):
        compute_N(q, EnumerationBudget(max_templates=10), method="structures")
