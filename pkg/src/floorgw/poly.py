"""Exact multivariate polynomials and the polynomial pieces of ``F``.

Pieces are recovered by interpolation in the free coordinates of a chamber
(every coordinate except the eliminated one, see :mod:`floorgw.chambers`).
When the chamber contains an axis-aligned lattice simplex of the required
size, values on the simplex are turned into a polynomial by Newton forward
differences; otherwise a square linear system is solved exactly.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import comb, factorial
from typing import Callable, Sequence

from . import chambers as ch
from .enumeration import DEFAULT_BUDGET, EnumerationBudget
from .invariants import compute_F, gamma

MAX_MONOMIALS = 5000


class InterpolationError(ValueError):
    pass


class Inconsistent(InterpolationError):
    """The samples are not values of a polynomial of the given degree."""


class RankDeficient(InterpolationError):
    """The sample points do not determine a unique polynomial."""


class TooManyMonomials(InterpolationError):
    pass


class SamplingFailure(RuntimeError):
    pass


class HoldoutMismatch(RuntimeError):
    pass


# -- polynomials ---------------------------------------------------------------------

def _grlex_key(exp):
    return (sum(exp), exp)


class MultiPoly:
    """A polynomial with rational coefficients in named variables.

    ``terms`` maps exponent tuples to nonzero :class:`Fraction` coefficients.
    """

    __slots__ = ("variables", "terms")

    def __init__(self, variables: Sequence[str], terms=None):
        self.variables = tuple(variables)
        clean = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != len(self.variables):
                raise ValueError("exponent length does not match the variables")
            c = Fraction(c)
            if c:
                clean[exp] = clean.get(exp, 0) + c
                if not clean[exp]:
                    del clean[exp]
        self.terms = clean

    @classmethod
    def constant(cls, variables, c) -> "MultiPoly":
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def variable(cls, variables, name) -> "MultiPoly":
        variables = tuple(variables)
        exp = [0] * len(variables)
        exp[variables.index(name)] = 1
        return cls(variables, {tuple(exp): 1})

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.variables != self.variables:
                raise ValueError("polynomials in different variables")
            return other
        return MultiPoly.constant(self.variables, other)

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return MultiPoly(self.variables, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return MultiPoly(self.variables, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = MultiPoly.constant(self.variables, 1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.variables == other.variables and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.variables, tuple(sorted(self.terms.items()))))

    def __call__(self, point) -> Fraction:
        return self.evaluate(point)

    def evaluate(self, point) -> Fraction:
        point = [Fraction(v) for v in point]
        if len(point) != len(self.variables):
            raise ValueError("point dimension does not match the variables")
        total = Fraction(0)
        for exp, c in self.terms.items():
            term = c
            for v, e in zip(point, exp):
                if e:
                    term *= v ** e
            total += term
        return total

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self):
        """Largest total degree of a term; ``None`` for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=None)

    def parity(self):
        """0 or 1 if every term has total degree of that parity, else ``None``."""
        parities = {sum(e) % 2 for e in self.terms}
        return parities.pop() if len(parities) == 1 else None

    def sorted_terms(self) -> list:
        """Terms in graded lexicographic order, leading term first."""
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    # -- output -----------------------------------------------------------------
    def to_dict(self) -> dict:
        return {"vars": list(self.variables),
                "terms": [{"exp": list(e), "num": str(c.numerator), "den": str(c.denominator)}
                          for e, c in self.sorted_terms()]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, data: dict) -> "MultiPoly":
        return cls(data["vars"], {tuple(t["exp"]): Fraction(int(t["num"]), int(t["den"]))
                                  for t in data["terms"]})

    def _render(self, mono, coeff, times):
        if not self.terms:
            return "0"
        out = []
        for i, (e, c) in enumerate(self.sorted_terms()):
            m = mono(e)
            mag = abs(c)
            if m and mag == 1:
                body = m
            elif m:
                body = coeff(mag) + times + m
            else:
                body = coeff(mag)
            if i == 0:
                out.append(("-" if c < 0 else "") + body)
            else:
                out.append((" - " if c < 0 else " + ") + body)
        return "".join(out)

    def to_text(self) -> str:
        def mono(e):
            return "*".join(v if p == 1 else f"{v}^{p}" for v, p in zip(self.variables, e) if p)
        return self._render(mono, str, "*")

    def to_latex(self) -> str:
        def name(v):
            head = v.rstrip("0123456789")
            tail = v[len(head):]
            return f"{head}_{{{tail}}}" if tail else head

        def mono(e):
            return " ".join(name(v) if p == 1 else f"{name(v)}^{{{p}}}"
                            for v, p in zip(self.variables, e) if p)

        def coeff(c):
            return str(c.numerator) if c.denominator == 1 else \
                f"\\frac{{{c.numerator}}}{{{c.denominator}}}"

        return self._render(mono, coeff, " ")

    def __repr__(self):
        return f"MultiPoly({self.to_text()!r} in {','.join(self.variables)})"


def monomials(n_vars: int, degree: int) -> list:
    """Exponent vectors of total degree at most ``degree``, in grlex order."""
    out = [e for e in product(range(degree + 1), repeat=n_vars) if sum(e) <= degree]
    return sorted(out, key=_grlex_key)


def monomial_count(n_vars: int, degree: int) -> int:
    return comb(n_vars + degree, degree)


def _check_size(n_vars, degree):
    n = monomial_count(n_vars, degree)
    if n > MAX_MONOMIALS:
        raise TooManyMonomials(f"{n} monomials exceed the limit of {MAX_MONOMIALS}")
    return n


# -- interpolation by linear solve ---------------------------------------------------

def _eliminate(rows, ncols):
    """Row-reduce an augmented Fraction matrix in place; return pivot columns."""
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return pivots


def interpolate_with_rank(samples, degree: int, variables: Sequence[str], mode: str = "exact"):
    """Like :func:`interpolate`, also returning the rank of the sample system."""
    variables = tuple(variables)
    n_vars = len(variables)
    _check_size(n_vars, degree)
    mons = monomials(n_vars, degree)
    samples = [(tuple(p), Fraction(v)) for p, v in samples]
    if len({p for p, _ in samples}) != len(samples):
        raise ValueError("sample points must be distinct")
    rows = []
    for p, v in samples:
        if len(p) != n_vars:
            raise ValueError("sample dimension does not match the variables")
        rows.append([Fraction(_mono_value(p, e)) for e in mons] + [v])
    pivots = _eliminate(rows, len(mons))
    rank = len(pivots)
    for row in rows[rank:]:
        if row[-1] != 0:
            raise Inconsistent("samples are not values of a polynomial of this degree")
    if rank < len(mons) and mode == "exact":
        raise RankDeficient(f"sample system has rank {rank} < {len(mons)} monomials")
    if mode not in ("exact", "reduce"):
        raise ValueError(f"unknown mode {mode!r}")
    terms = {mons[c]: rows[i][-1] for i, c in enumerate(pivots)}
    return MultiPoly(variables, terms), rank


def interpolate(samples, degree: int, variables: Sequence[str], mode: str = "exact") -> MultiPoly:
    """The polynomial of total degree at most ``degree`` through ``samples``.

    ``samples`` is a list of ``(point, value)`` pairs.  In ``"exact"`` mode the
    polynomial must be unique; :class:`RankDeficient` is raised otherwise.  In
    ``"reduce"`` mode a rank-deficient system is resolved by keeping only the
    monomials that are pivots when columns are taken lowest degree first, which
    picks one polynomial agreeing with all samples.  :class:`Inconsistent` is
    raised in both modes when no polynomial fits.
    """
    return interpolate_with_rank(samples, degree, variables, mode)[0]


def _mono_value(p, e):
    out = 1
    for v, k in zip(p, e):
        if k:
            out *= v ** k
    return out


# -- interpolation on a simplex ------------------------------------------------------

def simplex_offsets(n_vars: int, degree: int) -> list:
    return monomials(n_vars, degree)


def simplex_points(corner, signs, degree) -> list:
    return [tuple(c + s * n for c, s, n in zip(corner, signs, off))
            for off in simplex_offsets(len(corner), degree)]


def _binomial_poly(variables, i, corner_i, sign, j, cache):
    key = (i, corner_i, sign, j)
    if key not in cache:
        z = MultiPoly.variable(variables, variables[i])
        n = (z - corner_i) * sign
        out = MultiPoly.constant(variables, 1)
        for r in range(j):
            out = out * (n - r)
        cache[key] = out * Fraction(1, factorial(j))
    return cache[key]


def interpolate_simplex(corner, signs, degree: int, values: dict, variables) -> MultiPoly:
    """Polynomial of degree at most ``degree`` through its values on the simplex
    ``{corner + signs * n : n >= 0, |n| <= degree}``.

    ``values`` maps offset vectors ``n`` to values.  Uses forward differences,
    so no linear system is solved.
    """
    variables = tuple(variables)
    m = len(variables)
    table = {n: Fraction(values[n]) for n in simplex_offsets(m, degree)}
    for axis in range(m):
        lines = {}
        for n in table:
            key = n[:axis] + n[axis + 1:]
            lines.setdefault(key, []).append(n)
        for key, members in lines.items():
            members.sort(key=lambda e: e[axis])
            seq = [table[n] for n in members]
            diffs = []
            while seq:
                diffs.append(seq[0])
                seq = [b - a for a, b in zip(seq, seq[1:])]
            for n, d in zip(members, diffs):
                table[n] = d
    cache = {}
    out = MultiPoly(variables)
    for n, d in table.items():
        if not d:
            continue
        term = MultiPoly.constant(variables, d)
        for i, j in enumerate(n):
            if j:
                term = term * _binomial_poly(variables, i, corner[i], signs[i], j, cache)
        out = out + term
    return out


# -- chamber pieces ------------------------------------------------------------------

def expected_degree(a: int, g: int, n2: int) -> int:
    return n2 + 3 * g + 2 * a - 2


@dataclass
class ChamberPiece:
    signature: str
    polynomial: MultiPoly
    degree_bound: int
    method: str                       # "simplex", "solve" or "reduce"
    full_rank: bool
    fit: list = field(default_factory=list)       # (full point, value)
    holdout: list = field(default_factory=list)   # (full point, value)
    params: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "signature": self.signature,
            "params": self.params,
            "polynomial": self.polynomial.to_dict(),
            "degree_bound": self.degree_bound,
            "method": self.method,
            "full_rank": self.full_rank,
            "evidence": {
                "fit": [[list(p), str(v)] for p, v in self.fit],
                "holdout": [[list(p), str(v)] for p, v in self.holdout],
            },
        }


def _f_evaluator(a, k, g, n1, budget):
    cache = {}

    def f(point):
        if point not in cache:
            cache[point] = compute_F(a, k, g, point[:n1], point[n1:], budget)
        return cache[point]

    return f


def find_simplex(inside: Callable, candidates, n_vars: int, degree: int):
    """An axis-aligned simplex of the given size whose vertices all satisfy
    ``inside``; its lattice points then do too (for convex regions)."""
    signs_list = list(product((1, -1), repeat=n_vars))
    for corner in candidates:
        for signs in signs_list:
            verts = [tuple(corner)]
            for i in range(n_vars):
                v = list(corner)
                v[i] += signs[i] * degree
                verts.append(tuple(v))
            if all(inside(v) for v in verts):
                return tuple(corner), signs
    return None


def chamber_polynomial(a: int, k: int, g: int, n1: int, n2: int, sig, seed: int = 0,
                       budget: EnumerationBudget = DEFAULT_BUDGET,
                       arrangement: ch.Arrangement | None = None,
                       box_bound: int | None = None, holdout: int = 5,
                       allow_degenerate: bool = False, extra: int = 0):
    """Interpolate ``F_{a,k,g}`` on one chamber at degree ``n2 + 3g + 2a - 2``.

    Returns ``(piece, spare)`` where ``spare`` lists chamber points (with
    values not computed) that were neither fitted nor held out; ``extra``
    asks for at least that many of them.  Raises :class:`SamplingFailure` when
    the chamber has too few lattice points in the box and
    :class:`HoldoutMismatch` when a held-out value is not reproduced.
    """
    arr = arrangement or ch.build_arrangement(n1, n2, a, k)
    if isinstance(sig, str):
        sig = ch.Signature.parse(sig)
    bound = ch.default_box(a, k) if box_bound is None else box_bound
    degree = expected_degree(a, g, n2)
    variables = ch.free_names(n1, n2)
    m = len(variables)
    n_mon = _check_size(m, degree)
    f = _f_evaluator(a, k, g, n1, budget)
    params = {"a": a, "k": k, "g": g, "n1": n1, "n2": n2}

    sample = ch.sample_chamber(arr, sig, count=max(60, holdout + extra + 20), box_bound=bound,
                               seed=seed)
    pts = list(sample.points)
    if not pts:
        raise SamplingFailure(f"no lattice point of chamber {sig} within box {bound}")

    def inside(free):
        p = ch.complete_point(free, n1, n2, a, k)
        return max(abs(v) for v in p) <= bound and ch._matches(arr, sig, p)

    cands = sorted((ch.free_part(p, n1, n2) for p in pts), key=lambda q: (max(map(abs, q)), q))
    found = find_simplex(inside, cands, m, degree) if m else ((), ())
    if found is not None:
        corner, signs = found
        offsets = simplex_offsets(m, degree)
        values, fit = {}, []
        for off in offsets:
            free = tuple(c + s * n for c, s, n in zip(corner, signs, off))
            p = ch.complete_point(free, n1, n2, a, k)
            values[off] = f(p)
            fit.append((p, values[off]))
        poly = interpolate_simplex(corner, signs, degree, values, variables)
        used = {p for p, _ in fit}
        rest = [p for p in pts if p not in used]
        if len(rest) < holdout + extra:
            more = ch.sample_chamber(arr, sig, count=len(used) + holdout + extra + 20,
                                     box_bound=bound, seed=seed + 1)
            rest += [p for p in more.points if p not in used and p not in rest]
        if len(rest) < holdout + extra:
            raise SamplingFailure(f"chamber {sig}: too few points beyond the simplex")
        method, full_rank = "simplex", True
    else:
        need = n_mon + holdout + extra
        if len(pts) < need:
            more = ch.sample_chamber(arr, sig, count=need, box_bound=bound, seed=seed)
            pts = list(more.points)
        if len(pts) < holdout + extra + 1:
            raise SamplingFailure(f"chamber {sig}: {len(pts)} lattice points in box {bound}")
        n_fit = len(pts) - holdout - extra
        if n_fit < n_mon and not allow_degenerate:
            raise SamplingFailure(
                f"chamber {sig}: {len(pts)} lattice points, need {need} for degree {degree}")
        fit = [(p, f(p)) for p in pts[:n_fit]]
        rest = pts[n_fit:]
        samples = [(ch.free_part(p, n1, n2), v) for p, v in fit]
        mode = "reduce" if allow_degenerate else "exact"
        poly, rank = interpolate_with_rank(samples, degree, variables, mode)
        full_rank = rank == n_mon
        method = "solve" if full_rank else "reduce"
    held = [(p, f(p)) for p in rest[:holdout]]
    for p, v in held:
        got = poly(ch.free_part(p, n1, n2))
        if got != v:
            raise HoldoutMismatch(f"chamber {sig}: value {v} at {p}, polynomial gives {got}")
    piece = ChamberPiece(str(sig), poly, degree, method, full_rank, fit, held, params)
    return piece, rest[holdout:]


# -- degree and parity ---------------------------------------------------------------

@dataclass
class DegreeParityReport:
    expected_degree: int
    degree: int | None
    degree_ok: bool
    parity_checked: bool
    parity_ok: bool | None
    note: str = ""

    @property
    def ok(self) -> bool:
        return self.degree_ok and (self.parity_ok is not False)

    def to_dict(self) -> dict:
        return {"expected_degree": self.expected_degree, "degree": self.degree,
                "degree_ok": self.degree_ok, "parity_checked": self.parity_checked,
                "parity_ok": self.parity_ok, "note": self.note}


def degree_parity_report(piece: ChamberPiece, a: int, g: int, n2: int, k: int) -> DegreeParityReport:
    """Total degree of a piece and, at ``k = 0``, coefficient parity.

    For ``k > 0`` only the degree is checked here: the parity statement holds
    jointly in ``(x, y, k)``, see :func:`joint_parity_report`.
    """
    exp = expected_degree(a, g, n2)
    poly = piece.polynomial
    if poly.is_zero():
        return DegreeParityReport(exp, None, True, k == 0, True if k == 0 else None,
                                  "zero polynomial: vacuous")
    deg = poly.total_degree()
    if not piece.full_rank:
        return DegreeParityReport(exp, deg, False, False, None,
                                  "piece not uniquely determined by the chamber's lattice points")
    if k == 0:
        par = poly.parity()
        return DegreeParityReport(exp, deg, deg == exp, True, par == exp % 2,
                                  "odd" if par == 1 else "even" if par == 0 else "mixed parity")
    return DegreeParityReport(exp, deg, deg == exp, False, None,
                              "k > 0: fixed-k parity not asserted; see the joint (x, y, k) check")


@dataclass
class JointParityReport:
    signature: str
    polynomial: MultiPoly
    expected_degree: int
    degree: int | None
    parity: int | None
    k_values: tuple
    holdout: int

    @property
    def ok(self) -> bool:
        if self.polynomial.is_zero():
            return True
        return self.degree == self.expected_degree and self.parity == self.expected_degree % 2

    def to_dict(self) -> dict:
        return {"signature": self.signature, "polynomial": self.polynomial.to_dict(),
                "expected_degree": self.expected_degree, "degree": self.degree,
                "parity": self.parity, "k_values": list(self.k_values), "ok": self.ok}


def joint_parity_report(a: int, g: int, n1: int, n2: int, forms, sig, seed: int = 0,
                        box_bound: int = 40, k_max: int = 40, holdout: int = 5,
                        budget: EnumerationBudget = DEFAULT_BUDGET) -> JointParityReport:
    """Interpolate ``F`` as a polynomial in the free coordinates and ``k``
    jointly on the cone cut out by ``forms`` with signs ``sig`` (``k >= 0``),
    then report its degree and whether ``P(-v) = (-1)^D P(v)``."""
    if isinstance(sig, str):
        sig = ch.Signature.parse(sig)
    degree = expected_degree(a, g, n2)
    variables = tuple(ch.free_names(n1, n2)) + ("k",)
    m = len(variables)
    _check_size(m, degree)

    def full(v):
        return ch.complete_point(v[:-1], n1, n2, a, v[-1])

    def inside(v):
        if v[-1] < 0 or max(abs(c) for c in v[:-1]) > box_bound:
            return False
        p = full(v)
        return all(f.value(p, v[-1]) * s > 0 for f, s in zip(forms, sig.signs))

    rng = random.Random(seed)
    pts = []
    seen = set()
    for _ in range(20000):
        v = tuple(rng.randint(-box_bound, box_bound) for _ in range(m - 1)) + (rng.randint(0, k_max),)
        if v not in seen and inside(v):
            seen.add(v)
            pts.append(v)
        if len(pts) >= 200:
            break
    cands = sorted(pts, key=lambda v: (max(map(abs, v)), v))
    found = find_simplex(inside, cands, m, degree)
    if found is None:
        raise SamplingFailure(f"no simplex of size {degree} found in the cone {sig}")
    corner, signs = found
    values = {}
    ks = set()

    def fval(v):
        p = full(v)
        return compute_F(a, v[-1], g, p[:n1], p[n1:], budget)

    offs = simplex_offsets(m, degree)
    used = set()
    for off in offs:
        v = tuple(c + s * n for c, s, n in zip(corner, signs, off))
        used.add(v)
        ks.add(v[-1])
        values[off] = fval(v)
    poly = interpolate_simplex(corner, signs, degree, values, variables)
    rest = [v for v in pts if v not in used][:holdout]
    if len(rest) < holdout:
        raise SamplingFailure(f"cone {sig}: too few points beyond the simplex")
    for v in rest:
        if poly(v) != fval(v):
            raise HoldoutMismatch(f"cone {sig}: joint polynomial fails at {v}")
    return JointParityReport(str(sig), poly, degree, poly.total_degree(), poly.parity(),
                             tuple(sorted(ks)), len(rest))


def joint_parity_fixed_k(a: int, g: int, n1: int, n2: int, forms, sig, k_values=range(6),
                         box_bound: int = 12,
                         budget: EnumerationBudget = DEFAULT_BUDGET) -> JointParityReport:
    """Joint fit in (free coordinates, k) from every cone lattice point with
    ``k`` in ``k_values`` and coordinates within ``box_bound``, by exact
    elimination.  Raises :class:`RankDeficient` when those points do not
    determine the polynomial."""
    if isinstance(sig, str):
        sig = ch.Signature.parse(sig)
    degree = expected_degree(a, g, n2)
    variables = tuple(ch.free_names(n1, n2)) + ("k",)
    _check_size(len(variables), degree)
    samples = []
    for k in k_values:
        for v in product(range(-box_bound, box_bound + 1), repeat=len(variables) - 1):
            p = ch.complete_point(v, n1, n2, a, k)
            if 0 in p or not all(f.value(p, k) * s > 0 for f, s in zip(forms, sig.signs)):
                continue
            samples.append((v + (k,), compute_F(a, k, g, p[:n1], p[n1:], budget)))
    if not samples:
        raise SamplingFailure(f"cone {sig} has no lattice points for k in {list(k_values)}")
    poly, _ = interpolate_with_rank(samples, degree, variables, "exact")
    return JointParityReport(str(sig), poly, degree, poly.total_degree(), poly.parity(),
                             tuple(k_values), 0)


# -- labeled chambers ----------------------------------------------------------------

# coefficients of Gamma(x1), Gamma(x2), Gamma(y1), Gamma(0); "G" stands for g + 3
TABLE1_ROWS = {
    "0+-": (1, 1, 1, 1),
    "-+-": ("G", 1, 1, 1),
    "-+0": ("G", 1, "G", 1),
    "-++": (1, "G", 1, "G"),
    "-0+": (1, "G", 1, "G"),
    "--+": (1, 1, 1, "G"),
    "++-": (1, 1, 1, 1),
    "00-": (1, 1, 1, 1),
    "-00": ("G", 1, "G", 1),
    "000": (1, 1, "G", 1),
}


def normalize_label(label: str) -> str:
    label = label.replace("−", "-").replace(" ", "")
    if label not in TABLE1_ROWS:
        raise KeyError(f"{label!r} is not a row of the table")
    return label


def table1_coefficients(label: str, g: int) -> tuple:
    return tuple(g + 3 if c == "G" else c for c in TABLE1_ROWS[normalize_label(label)])


def gamma_terms(point, k: int, g: int) -> tuple:
    x1, x2, y1 = point
    return tuple(gamma(g, abs(v + k)) for v in (x1, x2, y1, 0))


def table1_value(label: str, point, k: int, g: int) -> int:
    coeffs = table1_coefficients(label, g)
    return abs(point[2]) * sum(c * t for c, t in zip(coeffs, gamma_terms(point, k, g)))


def fit_gamma_coefficients(samples, k: int, g: int):
    """Solve ``F / |y1| = sum c_i Gamma_i`` for the four coefficients.

    Returns the coefficient tuple when the samples determine it uniquely and
    are consistent with it, otherwise ``None``.
    """
    rows = []
    for p, v in samples:
        rows.append([Fraction(t) for t in gamma_terms(p, k, g)] + [Fraction(v, abs(p[2]))])
    pivots = _eliminate(rows, 4)
    if len(pivots) < 4 or any(r[-1] != 0 for r in rows[4:]):
        return None
    return tuple(rows[i][-1] for i in range(4))


@dataclass
class Table1Result:
    label: str
    k: int
    g: int
    equal: bool
    fresh_points: int
    expected_coefficients: tuple
    fitted_coefficients: tuple | None
    polynomial_diff: MultiPoly | None
    full_rank: bool
    method: str
    note: str = ""

    def to_dict(self) -> dict:
        fit = None if self.fitted_coefficients is None else [str(c) for c in self.fitted_coefficients]
        return {"row": self.label, "k": self.k, "g": self.g, "equal": self.equal,
                "fresh_points": self.fresh_points,
                "expected_coefficients": list(self.expected_coefficients),
                "fitted_coefficients": fit,
                "polynomial_diff": None if self.polynomial_diff is None
                else self.polynomial_diff.to_text(),
                "full_rank": self.full_rank, "method": self.method, "note": self.note}


def table1_polynomial(label: str, k: int, g: int, points) -> MultiPoly:
    """The row's closed form as a polynomial in ``(x1, y1)``, interpolated from
    its own values on ``points`` (which fix the signs inside ``|w + k|``)."""
    degree = expected_degree(2, g, 1)
    samples = [((p[0], p[2]), table1_value(label, p, k, g)) for p in points]
    return interpolate(samples, degree, ("x1", "y1"), mode="reduce")


def verify_table1(k: int, g: int, label: str, seed: int = 0, fresh: int = 20,
                  box_bound: int | None = None,
                  budget: EnumerationBudget = DEFAULT_BUDGET) -> Table1Result:
    """Compare the interpolated piece of ``F_{2,k,g}`` on a labeled chamber with
    the closed form ``|y1| * sum c_i Gamma_g(|w_i + k|)`` on fresh points."""
    label = normalize_label(label)
    if k < 1:
        raise ValueError("chamber labels need k >= 1")
    arr = ch.table1_arrangement(k)
    sig = ch.label_signature(label)
    expected = table1_coefficients(label, g)
    piece, spare = chamber_polynomial(2, k, g, 2, 1, sig, seed=seed, budget=budget,
                                      arrangement=arr, box_bound=box_bound,
                                      allow_degenerate=True, extra=fresh)
    f = _f_evaluator(2, k, g, 2, budget)
    fresh_pts = spare[:fresh]
    equal = True
    for p in fresh_pts:
        got = piece.polynomial((p[0], p[2]))
        if got != table1_value(label, p, k, g) or got != f(p):
            equal = False
    evidence = piece.fit + piece.holdout + [(p, f(p)) for p in fresh_pts]
    fitted = fit_gamma_coefficients(evidence, k, g)
    closed = table1_polynomial(label, k, g, [p for p, _ in evidence])
    diff = piece.polynomial - closed
    note = "" if piece.full_rank else "chamber is lower dimensional in the lattice; reduced fit"
    if len(fresh_pts) < fresh:
        equal = False
        note = f"only {len(fresh_pts)} fresh points available"
    return Table1Result(label, k, g, equal and diff.is_zero(), len(fresh_pts), expected,
                        fitted, diff, piece.full_rank, piece.method, note)


def gamma_polynomial(g: int) -> MultiPoly:
    """``Gamma_g`` as a polynomial in ``w``, interpolated at ``w = g+1 .. 4g+4``."""
    degree = 3 * g + 2
    samples = [((w,), gamma(g, w)) for w in range(g + 1, g + degree + 2)]
    return interpolate(samples, degree, ("w",))


@dataclass
class SurveyEntry:
    signature: str
    status: str                       # "piece", "zero", "insufficient"
    report: DegreeParityReport | None = None
    method: str = ""
    detail: str = ""

    def to_dict(self) -> dict:
        return {"signature": self.signature, "status": self.status, "method": self.method,
                "report": None if self.report is None else self.report.to_dict(),
                "detail": self.detail}


def degree_survey(a: int, g: int, n1: int, n2: int, k: int, seed: int = 0,
                  max_chambers: int = 2, draws: int = 400, box_bound: int | None = None,
                  budget: EnumerationBudget = DEFAULT_BUDGET) -> list:
    """Find chambers by seeded draws, interpolate the most populated ones and
    report degree (and parity at ``k = 0``) for each piece found."""
    arr = ch.build_arrangement(n1, n2, a, k)
    bound = ch.default_box(a, k) if box_bound is None else box_bound
    hits = ch.discover_chambers(arr, draws, bound, seed)
    order = sorted(hits, key=lambda s: (-len(hits[s]), s))
    out = []
    for sig in order[:max_chambers]:
        try:
            piece, _ = chamber_polynomial(a, k, g, n1, n2, sig, seed=seed, budget=budget,
                                          arrangement=arr, box_bound=bound)
        except (SamplingFailure, RankDeficient) as exc:
            out.append(SurveyEntry(sig, "insufficient", detail=str(exc)))
            continue
        rep = degree_parity_report(piece, a, g, n2, k)
        status = "zero" if piece.polynomial.is_zero() else "piece"
        out.append(SurveyEntry(sig, status, rep, piece.method))
    return out
