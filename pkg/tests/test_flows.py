import random
from itertools import product
from math import prod

import pytest
from hypothesis import given, settings, strategies as st

from floorgw.exact import det, lagrange_coefficients, eval_univariate, rank
from floorgw.flows import (
    FlowProblem,
    FlowSolver,
    NotPointed,
    UnboundedPolytope,
    VectorConfig,
    config_lattice_points,
    find_directed_cycle,
    inclusion_exclusion_check,
    lattice_points,
    matrix_is_unimodular,
    partition_function,
    reciprocity_check,
    unimodularity_check,
    weighted_partition_function,
)
from floorgw.verify import reference_flow_problems


def brute_flows(p, lower, upper):
    for w in product(range(lower, upper + 1), repeat=len(p.edges)):
        if p.divergence(w) == p.d_vec:
            yield w


def random_problem(rng):
    n = rng.randint(2, 5)
    edges = [(rng.randrange(v), v) for v in range(1, n)]
    for _ in range(rng.randint(0, 2)):
        u, v = sorted(rng.sample(range(n), 2))
        edges.append((u, v))
    w = [rng.randint(0, 3) for _ in edges]
    return FlowProblem(n, edges, FlowProblem(n, edges, [0] * n).divergence(w))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_solver_matches_brute_force(seed):
    p = random_problem(random.Random(seed))
    upper = sum(-v for v in p.d_vec if v < 0)
    solver = FlowSolver(p.n_vertices, p.edges)
    for lower in (0, 1):
        fast = sorted(solver.solutions(p.d_vec, lower=lower))
        assert fast == sorted(brute_flows(p, lower, upper))
        assert solver.square_product_sum(p.d_vec, lower=lower) == \
            sum(prod(x * x for x in w) for w in fast)


def test_directed_cycle_is_unbounded():
    assert find_directed_cycle(3, [(0, 1), (1, 2), (2, 0)]) is not None
    with pytest.raises(UnboundedPolytope):
        FlowSolver(3, [(0, 1), (1, 2), (2, 0)])


def test_unbalanced_target_has_no_flow():
    p = FlowProblem(2, [(0, 1)], (-1, 2))
    assert lattice_points(p) == []


def test_strict_points_are_interior():
    p = FlowProblem(3, [(0, 1), (1, 2), (0, 2)], (-3, 0, 3))
    assert len(lattice_points(p)) == 4
    assert len(lattice_points(p, strict=True)) == 2


def test_partition_function_coins():
    x = VectorConfig([(1,), (2,)])
    assert partition_function(x, (10,)) == 6
    assert weighted_partition_function(x, [1], (4,)) == 0 + 1 + 2
    assert sorted(config_lattice_points(x, (4,))) == [(0, 2), (2, 1), (4, 0)]


def test_not_pointed():
    with pytest.raises(NotPointed):
        VectorConfig([(1,), (-1,)])


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_inclusion_exclusion_random(seed):
    from floorgw.verify import random_pointed_config
    x, y, c = random_pointed_config(random.Random(seed))
    r = inclusion_exclusion_check(x, y, c)
    assert r.holds, (x, y, c, r)


@pytest.mark.parametrize("i", range(len(reference_flow_problems())))
def test_template_polytopes(i):
    p, internal = reference_flow_problems()[i]
    assert reciprocity_check(p, internal[:2]).holds
    assert unimodularity_check([tuple(row[j] for row in p.adjacency_matrix())
                                for j in range(len(p.edges))])


def test_unimodularity():
    assert matrix_is_unimodular([[1, 0], [0, 1]])
    assert not matrix_is_unimodular([[1, 1], [-1, 1]])


def test_exact_helpers():
    assert det([[2, 1], [1, 3]]) == 5
    assert rank([[1, 2], [2, 4]]) == 1
    coeffs = lagrange_coefficients([(0, 1), (1, 2), (2, 5)])
    assert [eval_univariate(coeffs, t) for t in (3, -1)] == [10, 2]
