"""Verification suites: each returns a machine-readable pass/fail report."""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from itertools import permutations, product
from math import factorial, prod

from . import chambers as ch
from . import poly
from .diagram import (
    Color,
    FloorDiagram,
    MultiplicityVector,
    Template,
    derived_data,
    divergence,
    multiplicity,
    validate,
)
from .enumeration import (
    EnumerationQuery,
    InconsistentQuery,
    complete_weights,
    enumerate_diagrams,
    enumerate_templates,
    template_flow_problem,
)
from .flows import (
    FlowProblem,
    FlowSolver,
    VectorConfig,
    find_pointedness_certificate,
    inclusion_exclusion_check,
    reciprocity_check,
)
from .invariants import InvariantQuery, adjunction_bound, compute_F, compute_N, gamma
from .oracle import brute_force_diagrams


@dataclass
class Check:
    name: str
    passed: bool
    detail: object = None

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass
class SuiteReport:
    suite: str
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name, passed, detail=None):
        self.checks.append(Check(name, bool(passed), detail))

    def to_dict(self) -> dict:
        return {"suite": self.suite, "passed": self.passed,
                "checks": [c.to_dict() for c in self.checks]}


# -- reference diagrams ----------------------------------------------------------------

def genus_one_example() -> FloorDiagram:
    """The genus-1 diagram of bidegree (3, 4) on the surface with ``k = 2``."""
    b, gr, w = Color.BLACK, Color.GRAY, Color.WHITE
    colors = [w, b, w, gr, w, b, w, gr, gr, w, b]
    divs = [-1, None, 2, None, -3, None, 1, None, None, -1, None]
    t = Template(colors, divs, gray_edges=[(1, 5), (5, 10), (1, 10)],
                 whitec_edges=[1, 1, 5, 5, 10], x=(-2, -2, -1, 1),
                 l_attach=(1, 1, 1), r_attach=(10,))
    return FloorDiagram.from_gray_weights(t, (1, 1, 1))


def _mv(alpha=None, beta=None, alpha_tilde=None, beta_tilde=None):
    return MultiplicityVector.from_sparse(alpha, beta, alpha_tilde, beta_tilde)


# N_0^{01,1,0,1}(3,1,1) breaks sum i(alpha_i + beta_i) = ak + b; five
# diagrams with multiplicities 1,1,1,1,4 belong to the second query
INCONSISTENT_LABEL_QUERY = dict(a=3, b=1, k=1, g=0, mv=_mv({2: 1}, {1: 1}, None, {1: 1}))
FIVE_DIAGRAM_QUERY = dict(a=2, b=1, k=1, g=0, mv=_mv({2: 1}, {1: 1}, {1: 1}, None))

REFERENCE_VALUES = [
    ("N_0^{0,01,0,0}(2,0,1)", dict(a=2, b=0, k=1, g=0, mv=_mv(None, {2: 1})), 2),
    ("N_0^{01,0,0,0}(2,0,1)", dict(a=2, b=0, k=1, g=0, mv=_mv({2: 1})), 1),
    ("N_0^{01,0,0,01}(2,2,0)", dict(a=2, b=2, k=0, g=0, mv=_mv({2: 1}, None, None, {2: 1})), 8),
    ("N_0^{01,1,1,0}(2,1,1)", FIVE_DIAGRAM_QUERY, 8),
]


def suite_reference_values() -> SuiteReport:
    rep = SuiteReport("paper-values")
    for name, kw, want in REFERENCE_VALUES:
        got = compute_N(InvariantQuery(**kw))
        rep.add(name, got == want, {"value": got, "expected": want})
    q = InvariantQuery(**FIVE_DIAGRAM_QUERY)
    mults = sorted(m for _, m in enumerate_diagrams(q.enumeration_query()))
    rep.add("five diagrams of N_0^{01,1,1,0}(2,1,1)", mults == [1, 1, 1, 1, 4], {"multiplicities": mults})
    try:
        InvariantQuery(**INCONSISTENT_LABEL_QUERY)
        rep.add("label N_0^{01,1,0,1}(3,1,1) rejected as inconsistent", False, "accepted an inconsistent query")
    except InconsistentQuery as exc:
        rep.add("label N_0^{01,1,0,1}(3,1,1) rejected as inconsistent", True, str(exc))

    d = genus_one_example()
    dd = derived_data(d, 2)
    ok = (bool(validate(d, 2)) and dd.x == (-2, -2, -1, 1) and dd.y == (-1, 2, -3, 1, -1)
          and dd.multiplicities.compact() == "12,201,1,11" and dd.bidegree == (3, 4)
          and dd.genus == 1 and multiplicity(d) == 6)
    rep.add("genus-1 example diagram", ok, {"x": dd.x, "y": dd.y, "vector": dd.multiplicities.compact(),
                                     "bidegree": dd.bidegree, "genus": dd.genus,
                                     "multiplicity": multiplicity(d)})
    rep.add("genus-1 example fails at k=1", validate(d, 1).clause == "black-divergence")
    rep.add("black divergence", all(divergence(d, ("C", p)) == 2
                                    for p in d.template.positions(Color.BLACK)))
    v = compute_F(2, 2, 0, (-1, 3), (-6,))
    rep.add("F_{2,2,0}((-1,3),(-6))", v == 276, {"value": v})
    t1 = list(enumerate_templates(EnumerationQuery(2, 0, 1, (-2,), ())))
    t2 = list(enumerate_templates(EnumerationQuery(2, 0, 1, (), (-2,))))
    rep.add("single templates of the two degree-2 examples", len(t1) == 1 and len(t2) == 1)
    w2 = complete_weights(t2[0], EnumerationQuery(2, 0, 1, (), (-2,)))
    rep.add("forced gray weight of the white-vertex example", [x.gray_weights() for x in w2] == [(1,)])
    return rep


# -- labeled chambers ---------------------------------------------------------------------

def suite_table1(ks=(1, 2), gs=(0, 1), seed: int = 0, fresh: int = 20) -> SuiteReport:
    rep = SuiteReport("table1")
    for k in ks:
        for g in gs:
            for label in poly.TABLE1_ROWS:
                name = f"k={k} g={g} row {label}"
                try:
                    r = poly.verify_table1(k, g, label, seed=seed, fresh=fresh)
                except poly.SamplingFailure as exc:
                    rep.add(name, False, {"reason": "chamber has no usable lattice points",
                                          "error": str(exc)})
                    continue
                rep.add(name, r.equal, r.to_dict())
    return rep


# -- degree and parity -------------------------------------------------------------

DEGREE_GRID = dict(a=(1, 2, 3), g=(0, 1), shapes=((2, 1), (1, 2), (2, 2)), k=(0, 1, 2))


def suite_degree_parity(seed: int = 0, max_chambers: int = 2, joint: bool = True) -> SuiteReport:
    rep = SuiteReport("degree-parity")
    for a, g, (n1, n2), k in product(DEGREE_GRID["a"], DEGREE_GRID["g"],
                                     DEGREE_GRID["shapes"], DEGREE_GRID["k"]):
        for e in poly.degree_survey(a, g, n1, n2, k, seed=seed, max_chambers=max_chambers):
            name = f"a={a} g={g} n=({n1},{n2}) k={k} chamber {e.signature}"
            if e.status == "insufficient":
                rep.add(name + " (not populated)", True, e.to_dict())
            else:
                rep.add(name, e.report.ok, e.to_dict())
    if joint:
        for name, ok, detail in joint_parity_checks(seed):
            rep.add(name, ok, detail)
    return rep


def joint_parity_checks(seed: int = 0, k_values=range(6), extended: bool = True):
    """Joint (x, y, k) parity on the cones of the (a, n1, n2) = (2, 2, 1) table.

    First from lattice points with ``k`` in ``k_values``; then, as a separate
    check, from a simplex placed anywhere in the cone (``k`` unrestricted).
    """
    forms = ch.table1_arrangement(1).forms
    out = []
    ks = list(k_values)
    for g in (0, 1):
        for label in poly.TABLE1_ROWS:
            sig = ch.label_signature(label)
            name = f"joint parity g={g} cone {label} k in {ks[0]}..{ks[-1]}"
            try:
                r = poly.joint_parity_fixed_k(2, g, 2, 1, forms, sig, ks)
                out.append((name, r.ok, r.to_dict()))
            except (poly.RankDeficient, poly.SamplingFailure) as exc:
                out.append((name, False, {"error": str(exc)}))
            if extended:
                r = poly.joint_parity_report(2, g, 2, 1, forms, sig, seed=seed)
                out.append((f"joint parity g={g} cone {label} extended k", r.ok, r.to_dict()))
    return out


# -- flow polytopes -------------------------------------------------------------------

def _random_flow_problem(rng: random.Random, max_genus: int = 2):
    n = rng.randint(3, 6)
    edges = []
    for v in range(1, n):
        edges.append((rng.randrange(v), v))
    for _ in range(rng.randint(0, max_genus)):
        u, v = sorted(rng.sample(range(n), 2))
        edges.append((u, v))
    w = [rng.randint(1, 3) for _ in edges]
    p = FlowProblem(n, edges, [0] * n)
    d = p.divergence(w)
    return FlowProblem(n, edges, d)


def reference_flow_problems():
    """Template flow polytopes of the reference-value queries, with the internal
    edges as weight set."""
    out = []
    for _, kw, _ in REFERENCE_VALUES:
        q = InvariantQuery(**kw)
        eq = q.enumeration_query()
        for t in enumerate_templates(eq):
            p, ids = template_flow_problem(t, q.k)
            internal = [i for i, e in enumerate(t.edges()) if e.internal]
            out.append((p, internal))
    return out


def suite_reciprocity(trials: int = 20, seed: int = 0) -> SuiteReport:
    rep = SuiteReport("reciprocity")
    for i, (p, y) in enumerate(reference_flow_problems()):
        r = reciprocity_check(p, y)
        rep.add(f"template polytope {i}", r.holds, _recip_detail(r))
    rng = random.Random(seed)
    for i in range(trials):
        p = _random_flow_problem(rng)
        m = len(p.edges)
        y = sorted(rng.sample(range(m), rng.randint(0, min(2, m))))
        r = reciprocity_check(p, y)
        rep.add(f"random flow problem {i}", r.holds, _recip_detail(r))
    return rep


def _recip_detail(r):
    return {"dimension": r.dimension, "degree": r.degree, "fit_exact": r.fit_exact,
            "checks": [[t, str(a), str(b)] for t, a, b in r.checks]}


def random_pointed_config(rng: random.Random):
    while True:
        d = rng.randint(1, 3)
        m = rng.randint(1, 5)
        vecs = [tuple(rng.randint(-2, 2) for _ in range(d)) for _ in range(m)]
        cert = find_pointedness_certificate(vecs, max_norm=4)
        if cert is None:
            continue
        coeffs = [rng.randint(0, 3) for _ in range(m)]
        c = tuple(sum(z * v[i] for z, v in zip(coeffs, vecs)) for i in range(d))
        if max(map(abs, c), default=0) > 6:
            continue
        y = sorted(rng.sample(range(m), rng.randint(0, min(2, m))))
        return VectorConfig(vecs, cert), y, c


def suite_inclusion_exclusion(trials: int = 100, seed: int = 0) -> SuiteReport:
    rep = SuiteReport("inclusion-exclusion")
    rng = random.Random(seed)
    for i in range(trials):
        x, y, c = random_pointed_config(rng)
        r = inclusion_exclusion_check(x, y, c)
        rep.add(f"random configuration {i}", r.holds,
                {"vectors": x.vectors, "Y": y, "c": c, "lhs": r.weighted, "rhs": r.alternating})
    for i, (p, internal) in enumerate(reference_flow_problems()):
        cols = [tuple(row[j] for row in p.adjacency_matrix()) for j in range(len(p.edges))]
        cert = tuple(range(p.n_vertices))
        x = VectorConfig(cols, cert)
        y = internal[:2]
        r = inclusion_exclusion_check(x, y, p.d_vec)
        rep.add(f"template polytope {i}", r.holds, {"lhs": r.weighted, "rhs": r.alternating})
    return rep


# -- enumeration against the naive generator ------------------------------------------

def random_query(rng: random.Random, max_entry: int = 4, max_labels: int = 3) -> EnumerationQuery:
    while True:
        a = rng.randint(1, 3)
        g = rng.randint(0, 1)
        k = rng.randint(0, 2)
        n1 = rng.randint(0, 2)
        n2 = rng.randint(0, 2)
        if n1 + n2 > max_labels:
            continue
        vals = [rng.choice([v for v in range(-max_entry, max_entry + 1) if v])
                for _ in range(n1 + n2)]
        if sum(vals) + a * k == 0:
            return EnumerationQuery(a, g, k, tuple(vals[:n1]), tuple(vals[n1:]))


def suite_oracle(trials: int = 50, seed: int = 7) -> SuiteReport:
    rep = SuiteReport("oracle")
    rng = random.Random(seed)
    for i in range(trials):
        q = random_query(rng)
        fast = Counter(d.to_json() for d, _ in enumerate_diagrams(q))
        slow = Counter(d.to_json() for d in brute_force_diagrams(q))
        rep.add(f"query {i}: a={q.a} g={q.g} k={q.k} x={q.x} y={q.c_divs}", fast == slow,
                {"diagrams": sum(fast.values()), "oracle": sum(slow.values())})
    return rep


# -- symmetry, vanishing and Gamma ---------------------------------------------------

def suite_symmetry(queries: int = 5, perms: int = 20, seed: int = 0) -> SuiteReport:
    rep = SuiteReport("symmetry")
    rng = random.Random(seed)
    points = [(2, 2, 0, (-1, 3), (-6,)), (2, 1, 1, (-2, -3), (3,)),
              (3, 1, 0, (-2, 1), (-1, 2, -3)), (2, 1, 1, (-2, 1, -1), (1, -1))]
    while len(points) < queries:
        q = random_query(rng)
        points.append((q.a, q.k, q.g, q.x, q.c_divs))
    for a, k, g, x, y in points[:queries]:
        base = compute_F(a, k, g, x, y)
        vals = set()
        for _ in range(perms):
            xs, ys = list(x), list(y)
            rng.shuffle(xs)
            rng.shuffle(ys)
            vals.add(compute_F(a, k, g, xs, ys))
        rep.add(f"F_{{{a},{k},{g}}}({x},{y}) permutations", vals == {base},
                {"value": base, "seen": sorted(vals)})
        q = InvariantQuery(a, MultiplicityVector.from_divergences(x, y).b, k, g,
                           MultiplicityVector.from_divergences(x, y))
        direct = set(compute_N(q, method="structures", x=xp) for xp in set(permutations(x)))
        rep.add(f"F_{{{a},{k},{g}}}({x},{y}) label orders", direct == {base},
                {"seen": sorted(direct)})
    for a, b, k in product((1, 2, 3), repeat=3):
        g = adjunction_bound(a, b, k) + 1
        if g < 0:
            continue
        mv = MultiplicityVector((), (a * k + b,), (), (b,))
        got = compute_N(InvariantQuery(a, b, k, g, mv))
        rep.add(f"vanishing a={a} b={b} k={k} g={g}", got == 0, {"value": got})
    return rep


def ordered_y_sum(q: InvariantQuery) -> tuple:
    """``sum over distinct orders y`` of the diagram sum with whites in that
    order, and the labeled-whites version divided by the repetition factor."""
    eq = q.enumeration_query()
    distinct = 0
    for y in set(permutations(eq.c_divs)):
        distinct += sum(m for _, m in enumerate_diagrams(eq, fixed_y=y))
    labeled = 0
    for y in permutations(eq.c_divs):
        labeled += sum(m for _, m in enumerate_diagrams(eq, fixed_y=y))
    rep = prod(factorial(c) for c in Counter(eq.c_divs).values())
    return distinct, labeled, rep


def suite_gamma() -> SuiteReport:
    rep = SuiteReport("gamma")
    rep.add("gamma_0(w) = w^2, w = 1..20", all(gamma(0, w) == w * w for w in range(1, 21)))
    rep.add("gamma_1 closed form, w = 1..20",
            all(30 * gamma(1, w) == (w - 1) * w * (w + 1) * (w * w + 1) for w in range(1, 21)))
    p = poly.gamma_polynomial(2)
    rep.add("gamma_2 has degree 8 and is even", p.total_degree() == 8 and p.parity() == 0,
            {"polynomial": p.to_text()})
    return rep


SUITES = {
    "paper-values": suite_reference_values,
    "table1": suite_table1,
    "degree-parity": suite_degree_parity,
    "reciprocity": suite_reciprocity,
    "inclusion-exclusion": suite_inclusion_exclusion,
    "oracle": suite_oracle,
    "symmetry": suite_symmetry,
    "gamma": suite_gamma,
}
