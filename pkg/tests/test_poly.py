import json
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from floorgw import chambers as ch
from floorgw import poly, verify
from floorgw.invariants import compute_F, gamma
from floorgw.poly import MultiPoly

coeff = st.fractions(min_value=-20, max_value=20, max_denominator=6)
polys = st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)), coeff, max_size=6).map(
    lambda t: MultiPoly(("x", "y"), t))


@given(polys)
def test_json_round_trip(p):
    assert MultiPoly.from_dict(json.loads(p.to_json())) == p


@settings(max_examples=40, deadline=None)
@given(polys)
def test_interpolation_is_idempotent(p):
    deg = max(p.total_degree() or 0, 0)
    pts = [(x, y) for x, y in product(range(-3, 4), repeat=2)]
    q = poly.interpolate([(v, p(v)) for v in pts], deg, ("x", "y"))
    assert q == p


@given(polys, st.integers(-5, 5), st.integers(-5, 5))
def test_arithmetic(p, x, y):
    q = p * p - p + 3
    assert q((x, y)) == p((x, y)) ** 2 - p((x, y)) + 3


def test_parity_and_degree():
    x = MultiPoly.variable(("x", "y"), "x")
    y = MultiPoly.variable(("x", "y"), "y")
    assert (x ** 3 + x * y * y).parity() == 1
    assert (x ** 2 + 1).parity() == 0
    assert (x ** 2 + x).parity() is None
    assert (x * y ** 2).total_degree() == 3


def test_output_formats():
    x = MultiPoly.variable(("x1", "y1"), "x1")
    p = Fraction(1, 2) * x ** 2 - 3
    assert p.to_text() == "1/2*x1^2 - 3"
    assert "\\frac{1}{2}" in p.to_latex() and "x_{1}^{2}" in p.to_latex()


def test_inconsistent_samples():
    samples = [((t,), t * t) for t in range(5)]
    with pytest.raises(poly.Inconsistent):
        poly.interpolate(samples, 1, ("t",))


def test_rank_deficient_samples():
    samples = [((t, 0), t) for t in range(5)]
    with pytest.raises(poly.RankDeficient):
        poly.interpolate(samples, 2, ("x", "y"))
    p = poly.interpolate(samples, 2, ("x", "y"), mode="reduce")
    assert all(p(v) == val for v, val in samples)


def test_monomial_guard():
    with pytest.raises(poly.TooManyMonomials):
        poly.interpolate([], 30, ("a", "b", "c", "d"))


def test_simplex_newton_matches_elimination():
    p = MultiPoly(("x", "y"), {(3, 0): 2, (1, 1): -1, (0, 0): 5})
    corner, signs = (4, -2), (1, -1)
    values = {off: p(tuple(c + s * o for c, s, o in zip(corner, signs, off)))
              for off in poly.simplex_offsets(2, 3)}
    assert poly.interpolate_simplex(corner, signs, 3, values, ("x", "y")) == p


@pytest.mark.parametrize("g", [0, 1, 2, 3])
def test_gamma_polynomial(g):
    p = poly.gamma_polynomial(g)
    assert p.total_degree() == 3 * g + 2
    assert p.parity() == g % 2
    assert all(p((w,)) == gamma(g, w) for w in range(g + 1, g + 30))


def test_chamber_piece_of_the_example_point():
    arr = ch.table1_arrangement(2)
    sig = ch.signature(arr, (-1, 3, -6))
    piece, _ = poly.chamber_polynomial(2, 2, 0, 2, 1, sig, arrangement=arr, allow_degenerate=True)
    assert piece.polynomial((-1, -6)) == compute_F(2, 2, 0, (-1, 3), (-6,)) == 276


def test_degree_parity_report_at_k0():
    arr = ch.build_arrangement(2, 1, 2, 0)
    sig = ch.signature(arr, (-1, -1, 2))
    piece, _ = poly.chamber_polynomial(2, 0, 0, 2, 1, sig, arrangement=arr)
    rep = poly.degree_parity_report(piece, 2, 0, 1, 0)
    assert rep.degree == 3 and rep.parity_checked and rep.parity_ok


# supplementary: the labeled chambers are all full rank once k is large
@pytest.mark.parametrize("g,label", list(product((0, 1), poly.TABLE1_ROWS)))
def test_table1_rows_at_large_k(g, label):
    r = poly.verify_table1(12, g, label, seed=1, fresh=20)
    assert r.equal and r.full_rank, r.to_dict()
    assert tuple(r.fitted_coefficients) == r.expected_coefficients


# supplementary: joint parity with k free, on a simplex inside each cone
@pytest.mark.parametrize("g,label", list(product((0, 1), poly.TABLE1_ROWS)))
def test_joint_parity_extended_k(g, label):
    forms = ch.table1_arrangement(1).forms
    r = poly.joint_parity_report(2, g, 2, 1, forms, ch.label_signature(label))
    assert r.ok and r.degree == 3 * g + 3
