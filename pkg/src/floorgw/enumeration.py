"""Enumeration of the floor diagrams that contribute to one invariant.

Templates are generated structure first:

1. the *gray multigraph*: a multiset of black pairs ``(s, t)``, ``s < t``,
   one per gray vertex (blacks are numbered by their order in ``C``);
2. the black each white vertex of ``C`` hangs from (equal divergences are
   interchangeable, so a multiset of blacks per distinct divergence);
3. the black each ``L``/``R`` label hangs from;
4. every ordering of ``C`` compatible with the edge directions.

Steps 1-3 fix the flow problem for the gray weights, so weights are solved
once per structure and shared by all its orderings.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement, product
from math import prod
from typing import Iterator, Sequence

from .diagram import Color, FloorDiagram, Template, multiplicity
from .flows import FlowProblem, FlowSolver, lattice_points


class BudgetExceeded(RuntimeError):
    def __init__(self, what: str, limit: int, partial: int):
        super().__init__(f"{what} budget of {limit} exceeded (partial count {partial})")
        self.what = what
        self.limit = limit
        self.partial = partial


class InconsistentQuery(ValueError):
    pass


@dataclass(frozen=True)
class EnumerationBudget:
    max_templates: int = 10**6
    max_lattice_points: int = 10**7

    def __post_init__(self):
        if self.max_templates < 1 or self.max_lattice_points < 1:
            raise ValueError("budgets must be positive")


DEFAULT_BUDGET = EnumerationBudget()


@dataclass(frozen=True)
class EnumerationQuery:
    """Bidegree data for one invariant.

    ``x`` holds the label divergences (negative ones are ``L`` labels, positive
    ones ``R`` labels, in the given order); ``c_divs`` is the multiset of
    divergences of the white vertices in ``C``.
    """

    a: int
    g: int
    k: int
    x: tuple = ()
    c_divs: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "x", tuple(int(v) for v in self.x))
        object.__setattr__(self, "c_divs", tuple(sorted(int(v) for v in self.c_divs)))
        if self.a < 1:
            raise InconsistentQuery("a must be positive")
        if self.g < 0 or self.k < 0:
            raise InconsistentQuery("g and k must be nonnegative")
        if any(v == 0 for v in self.x + self.c_divs):
            raise InconsistentQuery("divergences must be nonzero")
        if sum(self.x) + sum(self.c_divs) + self.a * self.k != 0:
            raise InconsistentQuery("sum x + sum y + a k must vanish")

    @property
    def n_gray(self) -> int:
        return self.g + self.a - 1

    @property
    def l_divs(self) -> tuple:
        return tuple(v for v in self.x if v < 0)

    @property
    def r_divs(self) -> tuple:
        return tuple(v for v in self.x if v > 0)

    @property
    def supply(self) -> int:
        """Total weight leaving the sources; bounds every edge weight."""
        return -sum(v for v in self.x + self.c_divs if v < 0)


class _Counter:
    def __init__(self, budget: EnumerationBudget):
        self.budget = budget
        self.templates = 0
        self.points = 0

    def template(self):
        self.templates += 1
        if self.templates > self.budget.max_templates:
            raise BudgetExceeded("template", self.budget.max_templates, self.templates - 1)

    def point(self, n=1):
        self.points += n
        if self.points > self.budget.max_lattice_points:
            raise BudgetExceeded("lattice point", self.budget.max_lattice_points, self.points - n)


# -- gray multigraphs ------------------------------------------------------------

def black_pairs(a: int) -> list:
    return [(s, t) for s in range(a) for t in range(s + 1, a)]


def is_connected_multigraph(a: int, pairs) -> bool:
    parent = list(range(a))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for s, t in pairs:
        parent[find(s)] = find(t)
    return len({find(i) for i in range(a)}) == 1


def cut_crossings(a: int, pairs) -> list:
    """Number of gray vertices spanning each gap between consecutive blacks."""
    return [sum(1 for s, t in pairs if s < i <= t) for i in range(1, a)]


def cut_capacity_ok(a: int, k: int, supply: int, pairs) -> bool:
    """Necessary condition: the flow across the ``i``-th gap is at most
    ``supply - i k`` and every gray spanning it carries weight >= 1."""
    return all(c <= supply - (i + 1) * k for i, c in enumerate(cut_crossings(a, pairs)))


def gray_multigraphs(a: int, n_gray: int, k: int | None = None, supply: int | None = None):
    """Connected multisets of black pairs (sorted tuples), optionally cut-pruned."""
    if n_gray < 0:
        return
    pairs = black_pairs(a)
    if not pairs:
        if n_gray == 0:
            yield ()
        return
    for combo in combinations_with_replacement(pairs, n_gray):
        if not is_connected_multigraph(a, combo):
            continue
        if k is not None and not cut_capacity_ok(a, k, supply, combo):
            continue
        yield combo


@lru_cache(maxsize=4096)
def gray_solver(a: int, pairs: tuple) -> FlowSolver:
    return FlowSolver(a, pairs)


def gray_demands(a: int, k: int, label_divs, label_blacks, white_divs, white_blacks) -> tuple:
    """Net gray inflow each black needs so that its divergence is ``k``."""
    e = [k] * a
    for v, b in zip(label_divs, label_blacks):
        e[b] += v
    for v, b in zip(white_divs, white_blacks):
        e[b] += v
    return tuple(e)


# -- orderings of C --------------------------------------------------------------

def _allowed(item, placed_blacks):
    kind = item[0]
    if kind == "G":
        _, s, t = item
        return s < placed_blacks <= t
    _, v, b = item
    return placed_blacks <= b if v < 0 else placed_blacks > b


def _deadline(item) -> int:
    """Number of placed blacks after which ``item`` can no longer be placed."""
    kind = item[0]
    if kind == "G":
        return item[2]
    _, v, b = item
    return b if v < 0 else 10**9


def c_orderings(a: int, items: Counter) -> Iterator[tuple]:
    """Every distinct left-to-right sequence of the ``C`` vertices.

    ``items`` counts gray items ``("G", s, t)`` and white items
    ``("W", divergence, black)``; blacks are placed in order and written
    ``("B", index)``.
    """
    kinds = sorted(items)
    remaining = [items[k] for k in kinds]
    seq = []

    def rec(nb):
        if nb == a and not any(remaining):
            yield tuple(seq)
            return
        if nb < a and all(r == 0 or _deadline(kd) > nb for kd, r in zip(kinds, remaining)):
            seq.append(("B", nb))
            yield from rec(nb + 1)
            seq.pop()
        for i, kd in enumerate(kinds):
            if remaining[i] and _allowed(kd, nb):
                remaining[i] -= 1
                seq.append(kd)
                yield from rec(nb)
                seq.pop()
                remaining[i] += 1

    yield from rec(0)


def template_from_sequence(seq, x, l_divs, l_blacks, r_divs, r_blacks) -> tuple:
    """Build a :class:`Template`; also return, per gray in C-order, its pair."""
    black_pos = {}
    for p, item in enumerate(seq):
        if item[0] == "B":
            black_pos[item[1]] = p
    colors, divs, gray_edges, whitec, gray_pairs = [], [], [], [], []
    for item in seq:
        if item[0] == "B":
            colors.append(Color.BLACK)
            divs.append(None)
        elif item[0] == "G":
            colors.append(Color.GRAY)
            divs.append(None)
            gray_edges.append((black_pos[item[1]], black_pos[item[2]]))
            gray_pairs.append((item[1], item[2]))
        else:
            colors.append(Color.WHITE)
            divs.append(item[1])
            whitec.append(black_pos[item[2]])
    t = Template(colors, divs, gray_edges, whitec, tuple(l_divs) + tuple(r_divs),
                 tuple(black_pos[b] for b in l_blacks), tuple(black_pos[b] for b in r_blacks))
    return t, gray_pairs


# -- structures ------------------------------------------------------------------

@dataclass(frozen=True)
class Structure:
    """Gray multigraph plus attachments: everything but the C-ordering."""

    pairs: tuple
    white_items: tuple          # sorted (divergence, black) with repetition
    l_blacks: tuple
    r_blacks: tuple
    demands: tuple


def _white_multisets(a: int, c_divs: Sequence[int]):
    groups = sorted(Counter(c_divs).items())
    choices = [list(combinations_with_replacement(range(a), m)) for _, m in groups]
    for pick in product(*choices):
        items = []
        for (v, _), blacks in zip(groups, pick):
            items.extend((v, b) for b in blacks)
        yield tuple(items)


def structures(q: EnumerationQuery) -> Iterator[Structure]:
    l_divs, r_divs = q.l_divs, q.r_divs
    for pairs in gray_multigraphs(q.a, q.n_gray, q.k, q.supply):
        for whites in _white_multisets(q.a, q.c_divs):
            for lb in product(range(q.a), repeat=len(l_divs)):
                for rb in product(range(q.a), repeat=len(r_divs)):
                    e = gray_demands(q.a, q.k, l_divs + r_divs, lb + rb,
                                     [v for v, _ in whites], [b for _, b in whites])
                    yield Structure(pairs, whites, lb, rb, e)


def _solutions(st: Structure, q: EnumerationQuery):
    return gray_solver(q.a, st.pairs).solutions(st.demands, lower=1, upper=q.supply)


def _orderings(st: Structure, a: int):
    items = Counter(("G", s, t) for s, t in st.pairs)
    items.update(("W", v, b) for v, b in st.white_items)
    return c_orderings(a, items)


def enumerate_templates(q: EnumerationQuery, budget: EnumerationBudget = DEFAULT_BUDGET,
                        feasible_only: bool = True) -> Iterator[Template]:
    """Yield every template for ``q`` exactly once, in a fixed order.

    With ``feasible_only`` (the default) templates without any positive
    weighting are skipped, so every yielded template contributes.
    """
    counter = _Counter(budget)
    for st in structures(q):
        if feasible_only and next(iter(_solutions(st, q)), None) is None:
            continue
        for seq in _orderings(st, q.a):
            counter.template()
            t, _ = template_from_sequence(seq, q.x, q.l_divs, st.l_blacks, q.r_divs, st.r_blacks)
            yield t


def template_flow_problem(t: Template, k: int) -> tuple:
    """The flow problem whose lattice points are the weightings of ``t``.

    Returns ``(problem, edge_ids)``; vertex order is ``L``, ``C``, ``R``.
    """
    verts = t.vertices()
    index = {v: i for i, v in enumerate(verts)}
    d = []
    for v in verts:
        kind, i = v
        if kind == "L":
            d.append(t.l_divs[i])
        elif kind == "R":
            d.append(t.r_divs[i])
        elif t.colors[i] is Color.BLACK:
            d.append(k)
        elif t.colors[i] is Color.GRAY:
            d.append(0)
        else:
            d.append(t.white_divs[i])
    edges = [(index[e.src], index[e.dst]) for e in t.edges()]
    return FlowProblem(len(verts), edges, d), [e.id for e in t.edges()]


def complete_weights(t: Template, q: EnumerationQuery,
                     budget: EnumerationBudget = DEFAULT_BUDGET) -> list:
    """Every positive weighting of ``t`` giving blacks divergence ``k`` and
    grays divergence 0, i.e. the positive lattice points of its flow polytope."""
    problem, _ = template_flow_problem(t, q.k)
    points = lattice_points(problem, strict=True)
    if len(points) > budget.max_lattice_points:
        raise BudgetExceeded("lattice point", budget.max_lattice_points, budget.max_lattice_points)
    return [FloorDiagram(t, w) for w in points]


def enumerate_diagrams(q: EnumerationQuery, budget: EnumerationBudget = DEFAULT_BUDGET,
                       fixed_y: Sequence[int] | None = None) -> Iterator[tuple]:
    """Yield ``(diagram, multiplicity)`` for every diagram contributing to ``q``.

    ``fixed_y`` restricts to diagrams whose white vertices in ``C`` read
    ``fixed_y`` from left to right.
    """
    counter = _Counter(budget)
    fixed_y = tuple(fixed_y) if fixed_y is not None else None
    if fixed_y is not None and tuple(sorted(fixed_y)) != q.c_divs:
        raise InconsistentQuery("fixed_y must be an ordering of c_divs")
    for st in structures(q):
        sols = list(_solutions(st, q))
        if not sols:
            continue
        for seq in _orderings(st, q.a):
            if fixed_y is not None and tuple(i[1] for i in seq if i[0] == "W") != fixed_y:
                continue
            counter.template()
            t, gray_pairs = template_from_sequence(seq, q.x, q.l_divs, st.l_blacks,
                                                   q.r_divs, st.r_blacks)
            slots = _pair_slots(st.pairs, gray_pairs)
            for w in sols:
                counter.point()
                d = FloorDiagram.from_gray_weights(t, [w[j] for j in slots])
                yield d, multiplicity(d)


def _pair_slots(pairs, gray_pairs) -> list:
    """Index into ``pairs`` for each gray in C-order (same pairs matched in order)."""
    queues = {}
    for j, p in enumerate(pairs):
        queues.setdefault(p, []).append(j)
    used = Counter()
    out = []
    for p in gray_pairs:
        out.append(queues[p][used[p]])
        used[p] += 1
    return out


def diagram_sum(q: EnumerationQuery, budget: EnumerationBudget = DEFAULT_BUDGET) -> int:
    """Sum of multiplicities over :func:`enumerate_diagrams` without building diagrams."""
    counter = _Counter(budget)
    const = prod(abs(v) for v in q.c_divs)
    total = 0
    for st in structures(q):
        weights = 0
        n = 0
        for w in _solutions(st, q):
            n += 1
            weights += prod(v * v for v in w)
        if not n:
            continue
        orders = sum(1 for _ in _orderings(st, q.a))
        for _ in range(orders):
            counter.template()
        counter.point(orders * n)
        total += orders * weights
    return const * total
