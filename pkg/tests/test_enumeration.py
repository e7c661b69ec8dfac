import random
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from floorgw.enumeration import (
    BudgetExceeded,
    EnumerationBudget,
    EnumerationQuery,
    InconsistentQuery,
    diagram_sum,
    enumerate_diagrams,
    enumerate_templates,
    gray_multigraphs,
)
from floorgw.oracle import brute_force_diagrams
from floorgw.verify import random_query


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_matches_brute_force(seed):
    q = random_query(random.Random(seed))
    fast = Counter(d.to_json() for d, _ in enumerate_diagrams(q))
    slow = Counter(d.to_json() for d in brute_force_diagrams(q))
    assert fast == slow


def test_single_templates():
    assert len(list(enumerate_templates(EnumerationQuery(2, 0, 1, (-2,), ())))) == 1
    assert len(list(enumerate_templates(EnumerationQuery(2, 0, 1, (), (-2,))))) == 1


def test_no_templates_when_genus_too_large():
    assert list(enumerate_templates(EnumerationQuery(2, 3, 1, (), (-2,)))) == []


def test_lone_black():
    q = EnumerationQuery(1, 0, 0, (), ())
    assert [m for _, m in enumerate_diagrams(q)] == [1]


def test_inconsistent_query():
    with pytest.raises(InconsistentQuery):
        EnumerationQuery(2, 0, 1, (-1,), ())


def test_budget():
    q = EnumerationQuery(3, 1, 2, (-2, -2, -1, 1), (-1, 2, -3, 1, -1))
    with pytest.raises(BudgetExceeded) as info:
        diagram_sum(q, EnumerationBudget(max_templates=5))
    assert info.value.partial == 5


def test_gray_multigraphs_connected_and_sized():
    for pairs in gray_multigraphs(3, 3):
        assert len(pairs) == 3
        assert all(s < t for s, t in pairs)


def test_label_order_does_not_change_sum():
    a = EnumerationQuery(2, 0, 2, (-1, 3), (-6,))
    b = EnumerationQuery(2, 0, 2, (3, -1), (-6,))
    assert diagram_sum(a) == diagram_sum(b) == 276
