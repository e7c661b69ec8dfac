"""Acceptance criteria, each run at its stated tolerance.

Every test carries ``@pytest.mark.criterion(n)``; conftest prints one
PASS/FAIL line per criterion after the run.  Cells that cannot be satisfied
as literally stated still run in full; they are marked ``xfail(strict=True)``
with the reason, count as failures in the criterion line, and turn the run
red if they ever start passing.
"""

import time
from functools import lru_cache
from itertools import product

import pytest

from floorgw import chambers as ch
from floorgw import poly, verify
from floorgw.diagram import derived_data, multiplicity, validate
from floorgw.enumeration import InconsistentQuery, enumerate_diagrams
from floorgw.invariants import InvariantQuery, compute_N, gamma

crit = pytest.mark.criterion


def _report(rep):
    for c in rep.checks:
        print(f"{'PASS' if c.passed else 'FAIL'}  {c.name}")
    return [c.name for c in rep.checks if not c.passed]


# -- 1: reference values -------------------------------------------------------------

@crit(1)
@pytest.mark.parametrize("name,kw,want", verify.REFERENCE_VALUES[:3], ids=[p[0] for p in verify.REFERENCE_VALUES[:3]])
def test_c1_reference_value(name, kw, want):
    assert compute_N(InvariantQuery(**kw)) == want


@crit(1)
def test_c1_five_diagrams_of_the_example():
    q = InvariantQuery(**verify.FIVE_DIAGRAM_QUERY)
    mults = sorted(m for _, m in enumerate_diagrams(q.enumeration_query()))
    assert mults == [1, 1, 1, 1, 4]
    assert sum(mults) == compute_N(q) == 8


@crit(1)
@pytest.mark.xfail(raises=InconsistentQuery, strict=True,
                   reason="printed superscript violates sum i(alpha_i + beta_i) = ak + b")
def test_c1_literal_printed_query():
    # (3,1,1) with alpha=(0,1), beta=(1), beta~=(1): sum i(alpha+beta) = 3 != ak+b = 4
    q = InvariantQuery(**verify.INCONSISTENT_LABEL_QUERY)
    mults = sorted(m for _, m in enumerate_diagrams(q.enumeration_query()))
    assert mults == [1, 1, 1, 1, 4]


@crit(1)
def test_c1_runtime():
    t = time.perf_counter()
    for _, kw, _ in verify.REFERENCE_VALUES:
        compute_N(InvariantQuery(**kw))
    list(enumerate_diagrams(InvariantQuery(**verify.FIVE_DIAGRAM_QUERY).enumeration_query()))
    assert time.perf_counter() - t < 1.0


# -- 2: the genus-1 example diagram --------------------------------------------------

@crit(2)
def test_c2_genus_one_example():
    t = time.perf_counter()
    d = verify.genus_one_example()
    assert validate(d, 2)
    dd = derived_data(d, 2)
    elapsed = time.perf_counter() - t
    assert dd.x == (-2, -2, -1, 1)
    assert dd.y == (-1, 2, -3, 1, -1)
    assert dd.multiplicities.compact() == "12,201,1,11"
    assert dd.bidegree == (3, 4)
    assert dd.genus == 1
    assert multiplicity(d) == 6
    assert elapsed < 0.1


# -- 3: labeled chamber closed forms -------------------------------------------------

def _empty_chamber(k, label):
    arr = ch.table1_arrangement(k)
    return not ch.chamber_points(arr, ch.label_signature(label), ch.default_box(2, k), limit=1)


def _table1_cell(k, g, label):
    # a chamber with no lattice point at this k has nothing to interpolate;
    # the cell still runs and must fail
    marks = []
    if _empty_chamber(k, label):
        marks.append(pytest.mark.xfail(raises=poly.SamplingFailure, strict=True,
                                       reason=f"chamber {label} has no lattice points at k={k}"))
    return pytest.param(k, g, label, marks=marks, id=f"k{k}-g{g}-{label}")


TABLE1_CELLS = [_table1_cell(*c) for c in product((1, 2), (0, 1), poly.TABLE1_ROWS)]


@crit(3)
@pytest.mark.parametrize("k,g,label", TABLE1_CELLS)
def test_c3_table1(k, g, label):
    r = poly.verify_table1(k, g, label, seed=0, fresh=20)
    diff = r.to_dict()
    print(diff)
    assert r.fresh_points >= 20
    assert r.equal, f"coefficients {diff['fitted_coefficients']} vs {diff['expected_coefficients']}; diff {diff['polynomial_diff']}"


# -- 4 and 5: degree and parity ------------------------------------------------------

GRID = list(product(verify.DEGREE_GRID["a"], verify.DEGREE_GRID["g"],
                    verify.DEGREE_GRID["shapes"], verify.DEGREE_GRID["k"]))


@lru_cache(maxsize=None)
def _survey(a, g, n1, n2, k):
    return tuple(poly.degree_survey(a, g, n1, n2, k, seed=0, max_chambers=2))


@crit(4)
@pytest.mark.parametrize("a,g,shape,k", GRID,
                         ids=[f"a{a}-g{g}-n{s[0]}{s[1]}-k{k}" for a, g, s, k in GRID])
def test_c4_degree(a, g, shape, k):
    want = poly.expected_degree(a, g, shape[1])
    for e in _survey(a, g, *shape, k):
        print(e.to_dict())
        if e.status == "piece":
            assert e.report.degree == want, e.to_dict()


@crit(5)
@pytest.mark.parametrize("a,g,shape", [(a, g, s) for a, g, s, k in GRID if k == 0],
                         ids=[f"a{a}-g{g}-n{s[0]}{s[1]}" for a, g, s, k in GRID if k == 0])
def test_c5_parity_at_k0(a, g, shape):
    want = poly.expected_degree(a, g, shape[1]) % 2
    for e in _survey(a, g, *shape, 0):
        if e.status == "piece":
            assert e.report.parity_checked and e.report.parity_ok, e.to_dict()
            assert e.report.degree % 2 == want


def _joint_cell(g, label):
    # six values of k cannot pin down a k-degree above 5, and a cone whose
    # coordinates are all bounded by k has only finitely many points there
    degree = poly.expected_degree(2, g, 1)
    bounded = all(c in "0-" for c in label) and label.count("0") >= 2
    marks = []
    if degree > 5 or bounded:
        why = f"degree {degree} in k exceeds 5" if degree > 5 else "cone is bounded for k <= 5"
        marks.append(pytest.mark.xfail(raises=poly.RankDeficient, strict=True, reason=why))
    return pytest.param(g, label, marks=marks, id=f"g{g}-{label}")


JOINT = [_joint_cell(g, lab) for g, lab in product((0, 1), poly.TABLE1_ROWS)]


@crit(5)
@pytest.mark.parametrize("g,label", JOINT)
def test_c5_joint_parity_k_0_to_5(g, label):
    forms = ch.table1_arrangement(1).forms
    r = poly.joint_parity_fixed_k(2, g, 2, 1, forms, ch.label_signature(label), range(6))
    print(r.to_dict())
    assert r.ok


# -- 6: Gamma ------------------------------------------------------------------------

@crit(6)
def test_c6_gamma():
    t = time.perf_counter()
    assert all(gamma(0, w) == w * w for w in range(1, 21))
    assert all(30 * gamma(1, w) == (w - 1) * w * (w + 1) * (w * w + 1) for w in range(1, 21))
    p = poly.gamma_polynomial(2)
    assert p.total_degree() == 8 and p.parity() == 0
    assert time.perf_counter() - t < 1.0


# -- 7 to 10: suites -----------------------------------------------------------------

def _timed_suite(fn, limit, **kw):
    t = time.perf_counter()
    rep = fn(**kw)
    elapsed = time.perf_counter() - t
    failed = _report(rep)
    assert not failed, failed
    assert elapsed < limit, f"{elapsed:.1f}s"
    return rep


@crit(7)
def test_c7_inclusion_exclusion():
    rep = _timed_suite(verify.suite_inclusion_exclusion, 60, trials=100)
    assert sum(c.name.startswith("random configuration") for c in rep.checks) == 100


@crit(8)
def test_c8_reciprocity():
    rep = _timed_suite(verify.suite_reciprocity, 300, trials=20)
    assert sum(c.name.startswith("template polytope") for c in rep.checks) >= 1


@crit(9)
def test_c9_oracle():
    rep = _timed_suite(verify.suite_oracle, 600, trials=50)
    assert len(rep.checks) == 50


@crit(10)
def test_c10_symmetry_and_vanishing():
    rep = _timed_suite(verify.suite_symmetry, 120, perms=20)
    assert sum(c.name.startswith("vanishing") for c in rep.checks) == 27


@crit(1)
def test_c1_inconsistent_literal_is_reported():
    with pytest.raises(InconsistentQuery):
        InvariantQuery(**verify.INCONSISTENT_LABEL_QUERY)
