"""Double Gromov-Witten invariants of Hirzebruch surfaces as floor diagram sums."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from math import factorial, prod
from typing import Sequence

from .diagram import MultiplicityVector
from .enumeration import (
    DEFAULT_BUDGET,
    BudgetExceeded,
    EnumerationBudget,
    EnumerationQuery,
    InconsistentQuery,
    _white_multisets,
    diagram_sum,
    enumerate_diagrams,
    gray_demands,
    gray_multigraphs,
    gray_solver,
)

__all__ = [
    "InvariantQuery", "compute_N", "compute_F", "gamma", "adjunction_bound",
    "query_from_point", "InconsistentQuery", "BudgetExceeded",
]


class ZeroSurfaceDegree(InconsistentQuery):
    """Raised for ``a = 0``, whose invariants are not integers."""


@dataclass(frozen=True)
class InvariantQuery:
    a: int
    b: int
    k: int
    g: int
    mv: MultiplicityVector

    def __post_init__(self):
        if self.a == 0:
            raise ZeroSurfaceDegree("a = 0 is excluded: those invariants are rational, not integers")
        if self.a < 0 or min(self.b, self.k, self.g) < 0:
            raise InconsistentQuery("a must be positive and b, k, g nonnegative")
        if self.mv.b != self.b:
            raise InconsistentQuery(
                f"sum i (alpha~_i + beta~_i) = {self.mv.b} but b = {self.b}")
        if self.mv.negative_total != self.a * self.k + self.b:
            raise InconsistentQuery(
                f"sum i (alpha_i + beta_i) = {self.mv.negative_total} "
                f"but a k + b = {self.a * self.k + self.b}")

    @property
    def l(self) -> int:
        """Number of point conditions, ``2a + g + sum(beta_i + beta~_i) - 1``."""
        return 2 * self.a + self.g + sum(self.mv.beta) + sum(self.mv.beta_tilde) - 1

    @property
    def x(self) -> tuple:
        return self.mv.left_right_sequence()

    @property
    def c_divs(self) -> tuple:
        return self.mv.white_divergences()

    def enumeration_query(self, x: Sequence[int] | None = None) -> EnumerationQuery:
        x = self.x if x is None else tuple(x)
        if sorted(x) != sorted(self.x):
            raise InconsistentQuery("x must be a permutation of the left-right sequence")
        return EnumerationQuery(self.a, self.g, self.k, x, self.c_divs)

    def label(self) -> str:
        return f"N_{self.g}^{{{self.mv.compact()}}}({self.a},{self.b},{self.k})"


def query_from_point(a: int, k: int, g: int, x: Sequence[int], y: Sequence[int]) -> InvariantQuery:
    """The invariant ``F_{a,k,g}(x, y)`` refers to."""
    x, y = tuple(x), tuple(y)
    if a == 0:
        raise ZeroSurfaceDegree("a = 0 is excluded: those invariants are rational, not integers")
    if any(v == 0 for v in x + y):
        raise InconsistentQuery("entries of x and y must be nonzero")
    if sum(x) + sum(y) + a * k != 0:
        raise InconsistentQuery("point is not in the lattice: sum x + sum y + a k != 0")
    mv = MultiplicityVector.from_divergences(x, y)
    return InvariantQuery(a, mv.b, k, g, mv)


def adjunction_bound(a: int, b: int, k: int) -> int:
    """Largest genus for which the invariant can be nonzero."""
    return a * (a - 1) * k // 2 + a * b - a - b + 1


# -- fast evaluation --------------------------------------------------------------

def _item_interval(item, a):
    """Gaps (0..a, gap i just before black i) where a C item may sit."""
    if item[0] == "G":
        _, s, t = item
        return (s + 1, t)
    _, v, b = item
    return (0, b) if v < 0 else (b + 1, a)


@lru_cache(maxsize=None)
def _labeled_arrangements(intervals: tuple, n_gaps: int) -> int:
    """Number of ways to interleave distinguishable items with the blacks,
    each item inside its gap interval: sum over gap assignments of prod n_g!."""
    states = Counter({(0,) * n_gaps: 1})
    for lo, hi in intervals:
        nxt = Counter()
        for st, c in states.items():
            for gap in range(lo, hi + 1):
                s = list(st)
                s[gap] += 1
                nxt[tuple(s)] += c
        states = nxt
    return sum(c * prod(factorial(n) for n in st) for st, c in states.items())


def ordering_count(a: int, pairs, white_items) -> int:
    """Number of distinct C-orders for a gray multigraph and white attachments."""
    items = [("G", s, t) for s, t in pairs] + [("W", v, b) for v, b in white_items]
    types = Counter(items)
    intervals = tuple(sorted(_item_interval(i, a) for i in items))
    total = _labeled_arrangements(intervals, a + 1)
    return total // prod(factorial(m) for m in types.values())


@lru_cache(maxsize=200_000)
def _squared_flow_sum(a: int, pairs: tuple, demands: tuple, upper: int) -> int:
    """Sum over positive gray flows of the product of squared weights."""
    return gray_solver(a, pairs).square_product_sum(demands, lower=1, upper=upper)


def census_sum(q: EnumerationQuery) -> int:
    """Sum of multiplicities of every diagram for ``q``.

    Diagrams are grouped by gray multigraph, white attachments and label
    attachments; the C-orders of a group are counted rather than listed.
    """
    const = prod(abs(v) for v in q.c_divs)
    labels = q.l_divs + q.r_divs
    total = 0
    for pairs in gray_multigraphs(q.a, q.n_gray, q.k, q.supply):
        for whites in _white_multisets(q.a, q.c_divs):
            orders = ordering_count(q.a, pairs, whites)
            if not orders:
                continue
            wdivs = [v for v, _ in whites]
            wblacks = [b for _, b in whites]
            inner = 0
            for lb in product(range(q.a), repeat=len(labels)):
                e = gray_demands(q.a, q.k, labels, lb, wdivs, wblacks)
                inner += _squared_flow_sum(q.a, pairs, e, q.supply)
            total += orders * inner
    return const * total


# -- public operations ----------------------------------------------------------

def compute_N(q: InvariantQuery, budget: EnumerationBudget = DEFAULT_BUDGET,
              method: str = "census", x: Sequence[int] | None = None) -> int:
    """The invariant as a sum of diagram multiplicities.

    ``method`` is ``"census"`` (grouped counting, the default), ``"enumerate"``
    (every diagram is built) or ``"structures"`` (orders listed, diagrams not
    built).  All three give the same number.
    """
    eq = q.enumeration_query(x)
    if method == "census":
        return census_sum(eq)
    if method == "structures":
        return diagram_sum(eq, budget)
    if method == "enumerate":
        return sum(m for _, m in enumerate_diagrams(eq, budget))
    raise ValueError(f"unknown method {method!r}")


def compute_F(a: int, k: int, g: int, x: Sequence[int], y: Sequence[int],
              budget: EnumerationBudget = DEFAULT_BUDGET, method: str = "census") -> int:
    """``F_{a,k,g}(x, y)``: the invariant with left-right sequence ``x`` and
    white divergences ``y``."""
    return compute_N(query_from_point(a, k, g, x, y), budget, method)


def gamma(g: int, w: int) -> int:
    """Sum over compositions of ``w`` into ``g + 1`` positive parts of the
    product of the squared parts."""
    if g < 0:
        raise ValueError("g must be nonnegative")
    if w < 0:
        raise ValueError("w must be nonnegative")
    row = [0] * (w + 1)
    for v in range(1, w + 1):
        row[v] = v * v
    for _ in range(g):
        nxt = [0] * (w + 1)
        for total in range(2, w + 1):
            nxt[total] = sum(row[total - p] * p * p for p in range(1, total))
        row = nxt
    return row[w]
