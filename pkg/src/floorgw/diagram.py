"""Marked floor diagrams for Hirzebruch surfaces.

A diagram has three kinds of vertices: labeled white vertices on the left
(``L``) and right (``R``), and a totally ordered middle part ``C`` made of
black, gray and white vertices.  Edges always point from left to right.

Vertices are addressed by tuples:

* ``("C", p)`` -- the vertex at position ``p`` of the ordered part,
* ``("L", i)`` / ``("R", i)`` -- the ``i``-th left / right label (0-based).

A :class:`Template` stores everything except the gray weights; a
:class:`FloorDiagram` adds one positive weight per edge.  Both are immutable.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from math import prod
from typing import Iterable, Mapping, Sequence


class Color(str, Enum):
    BLACK = "black"
    GRAY = "gray"
    WHITE = "white"


@dataclass(frozen=True)
class Edge:
    id: str
    src: tuple
    dst: tuple

    @property
    def internal(self) -> bool:
        return self.src[0] == "C" and self.dst[0] == "C"


def _vertex_pos(v, n_c):
    kind, i = v
    if kind == "L":
        return -1
    if kind == "R":
        return n_c
    return i


@dataclass(frozen=True)
class MultiplicityVector:
    """Tangency profiles ``(alpha, beta, alpha~, beta~)``.

    Each profile is a tuple ``(m_1, m_2, ...)`` where ``m_i`` counts the
    divergences equal to ``-i`` (alpha, beta) or ``+i`` (tilde versions).
    Trailing zeros are stripped so equal profiles compare equal.
    """

    alpha: tuple = ()
    beta: tuple = ()
    alpha_tilde: tuple = ()
    beta_tilde: tuple = ()

    def __post_init__(self):
        for name in ("alpha", "beta", "alpha_tilde", "beta_tilde"):
            seq = _strip(getattr(self, name))
            if any(c < 0 for c in seq):
                raise ValueError(f"{name} has a negative entry")
            object.__setattr__(self, name, seq)

    @classmethod
    def from_sparse(cls, alpha=None, beta=None, alpha_tilde=None, beta_tilde=None):
        """Build from ``{i: count}`` mappings."""
        return cls(*(_dense(m or {}) for m in (alpha, beta, alpha_tilde, beta_tilde)))

    @classmethod
    def from_divergences(cls, x: Sequence[int], y: Sequence[int]) -> "MultiplicityVector":
        for v in list(x) + list(y):
            if v == 0:
                raise ValueError("divergences must be nonzero")
        neg_x = Counter(-v for v in x if v < 0)
        pos_x = Counter(v for v in x if v > 0)
        neg_y = Counter(-v for v in y if v < 0)
        pos_y = Counter(v for v in y if v > 0)
        return cls(_dense(neg_x), _dense(neg_y), _dense(pos_x), _dense(pos_y))

    @property
    def b(self) -> int:
        return _weighted(self.alpha_tilde) + _weighted(self.beta_tilde)

    @property
    def negative_total(self) -> int:
        """``sum i (alpha_i + beta_i)``, which must equal ``a k + b``."""
        return _weighted(self.alpha) + _weighted(self.beta)

    def left_right_sequence(self) -> tuple:
        """Canonical ``x``: negatives first, each block by decreasing ``|value|``."""
        neg = [-i for i in _expand(self.alpha)]
        pos = [i for i in _expand(self.alpha_tilde)]
        return tuple(sorted(neg)) + tuple(sorted(pos, reverse=True))

    def white_divergences(self) -> tuple:
        """Divergence multiset of the white vertices in ``C`` (sorted)."""
        neg = [-i for i in _expand(self.beta)]
        pos = [i for i in _expand(self.beta_tilde)]
        return tuple(sorted(neg + pos))

    def compact(self) -> str:
        """The concatenated-digit shorthand, e.g. ``12,201,1,11``.

        Only unambiguous when every count is below 10.
        """
        return ",".join("".join(str(c) for c in seq) or "0"
                        for seq in (self.alpha, self.beta, self.alpha_tilde, self.beta_tilde))

    def sparse(self) -> dict:
        return {name: {i + 1: c for i, c in enumerate(getattr(self, name)) if c}
                for name in ("alpha", "beta", "alpha_tilde", "beta_tilde")}


def _strip(seq):
    seq = tuple(int(c) for c in seq)
    while seq and seq[-1] == 0:
        seq = seq[:-1]
    return seq


def _dense(mapping: Mapping[int, int]) -> tuple:
    if not mapping:
        return ()
    if min(mapping) < 1:
        raise ValueError("multiplicity indices start at 1")
    out = [0] * max(mapping)
    for i, c in mapping.items():
        out[i - 1] += c
    return _strip(out)


def _weighted(seq) -> int:
    return sum((i + 1) * c for i, c in enumerate(seq))


def _expand(seq):
    for i, c in enumerate(seq):
        yield from [i + 1] * c


@dataclass(frozen=True)
class DivergenceSpec:
    """A point ``(x, y)`` of the lattice ``sum x + sum y + a k = 0``."""

    x: tuple
    y: tuple
    k: int
    a: int

    def __post_init__(self):
        object.__setattr__(self, "x", tuple(self.x))
        object.__setattr__(self, "y", tuple(self.y))
        if self.a < 1:
            raise ValueError("a must be positive")
        if self.k < 0:
            raise ValueError("k must be nonnegative")
        if any(v == 0 for v in self.x + self.y):
            raise ValueError("divergences must be nonzero")
        if sum(self.x) + sum(self.y) + self.a * self.k != 0:
            raise ValueError("point is not in the lattice: sum x + sum y + a k != 0")

    @property
    def multiplicities(self) -> MultiplicityVector:
        return MultiplicityVector.from_divergences(self.x, self.y)


@dataclass(frozen=True)
class Template:
    """A floor diagram without its gray weights.

    ``colors`` lists the ``C`` vertices from left to right.  ``white_divs``
    is aligned with ``colors`` and holds the divergence of each white vertex
    (``None`` elsewhere).  ``gray_edges`` maps each gray position to its
    ``(source black, target black)`` positions and ``whitec_edges`` maps each
    white position to its black.  ``x`` is the left-right sequence: the
    divergences of the ``L`` labels followed by those of the ``R`` labels;
    ``l_attach`` and ``r_attach`` give the black position of each label.
    """

    colors: tuple
    white_divs: tuple
    gray_edges: tuple
    whitec_edges: tuple
    x: tuple = ()
    l_attach: tuple = ()
    r_attach: tuple = ()
    _edges: tuple = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        colors = tuple(Color(c) for c in self.colors)
        object.__setattr__(self, "colors", colors)
        for name in ("white_divs", "x", "l_attach", "r_attach"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        object.__setattr__(self, "gray_edges", tuple(tuple(e) for e in self.gray_edges))
        object.__setattr__(self, "whitec_edges", tuple(self.whitec_edges))
        n = len(colors)
        if len(self.white_divs) != n:
            raise ValueError("white_divs must be aligned with colors")
        grays = [p for p, c in enumerate(colors) if c is Color.GRAY]
        whites = [p for p, c in enumerate(colors) if c is Color.WHITE]
        if len(self.gray_edges) != len(grays):
            raise ValueError("one (source, target) pair per gray vertex")
        if len(self.whitec_edges) != len(whites):
            raise ValueError("one black per white vertex of C")
        if len(self.l_attach) + len(self.r_attach) != len(self.x):
            raise ValueError("one attachment per label")
        for p in whites:
            if self.white_divs[p] is None:
                raise ValueError(f"white vertex at {p} has no divergence")
        for p, c in enumerate(colors):
            if c is not Color.WHITE and self.white_divs[p] is not None:
                raise ValueError(f"non-white vertex at {p} carries a divergence")
        targets = [t for pair in self.gray_edges for t in pair]
        targets += list(self.whitec_edges) + list(self.l_attach) + list(self.r_attach)
        for t in targets:
            if not 0 <= t < n:
                raise ValueError(f"attachment {t} out of range")
        object.__setattr__(self, "_edges", tuple(self._build_edges(grays, whites)))

    def _build_edges(self, grays, whites):
        edges = []
        for i, b in enumerate(self.l_attach):
            edges.append(Edge(f"L{i + 1}", ("L", i), ("C", b)))
        for i, b in enumerate(self.r_attach):
            edges.append(Edge(f"R{i + 1}", ("C", b), ("R", i)))
        for p, b in zip(whites, self.whitec_edges):
            if self.white_divs[p] < 0:
                edges.append(Edge(f"W{p}", ("C", p), ("C", b)))
            else:
                edges.append(Edge(f"W{p}", ("C", b), ("C", p)))
        for p, (s, t) in zip(grays, self.gray_edges):
            edges.append(Edge(f"G{p}-", ("C", s), ("C", p)))
            edges.append(Edge(f"G{p}+", ("C", p), ("C", t)))
        n = len(self.colors)
        edges.sort(key=lambda e: (_vertex_pos(e.src, n), _vertex_pos(e.dst, n), e.id))
        return edges

    # -- structure -------------------------------------------------------
    def edges(self) -> tuple:
        return self._edges

    def positions(self, color: Color) -> list:
        return [p for p, c in enumerate(self.colors) if c is color]

    @property
    def n_black(self) -> int:
        return self.colors.count(Color.BLACK)

    @property
    def n_gray(self) -> int:
        return self.colors.count(Color.GRAY)

    @property
    def n_white(self) -> int:
        return self.colors.count(Color.WHITE)

    @property
    def l_divs(self) -> tuple:
        return self.x[: len(self.l_attach)]

    @property
    def r_divs(self) -> tuple:
        return self.x[len(self.l_attach):]

    def vertices(self) -> list:
        out = [("L", i) for i in range(len(self.l_attach))]
        out += [("C", p) for p in range(len(self.colors))]
        out += [("R", i) for i in range(len(self.r_attach))]
        return out

    def y(self) -> tuple:
        return tuple(d for d in self.white_divs if d is not None)

    def genus(self) -> int:
        """First Betti number ``1 - |V| + |E|`` (for a connected diagram)."""
        return 1 - len(self.vertices()) + len(self._edges)

    def is_connected(self) -> bool:
        adj = {v: [] for v in self.vertices()}
        for e in self._edges:
            adj[e.src].append(e.dst)
            adj[e.dst].append(e.src)
        start = next(iter(adj))
        seen = {start}
        stack = [start]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(adj)

    def forced_weights(self) -> dict:
        """Weights fixed by the white divergences (label and white-C edges)."""
        out = {}
        for i, v in enumerate(self.l_divs):
            out[f"L{i + 1}"] = -v
        for i, v in enumerate(self.r_divs):
            out[f"R{i + 1}"] = v
        for p in self.positions(Color.WHITE):
            out[f"W{p}"] = abs(self.white_divs[p])
        return out

    def key(self) -> tuple:
        return (tuple(c.value for c in self.colors), self.white_divs, self.gray_edges,
                self.whitec_edges, self.x, self.l_attach, self.r_attach)


@dataclass(frozen=True)
class FloorDiagram:
    """A template together with one weight per edge.

    ``weights`` is aligned with ``template.edges()``.
    """

    template: Template
    weights: tuple

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        if len(self.weights) != len(self.template.edges()):
            raise ValueError("one weight per edge")

    @classmethod
    def from_gray_weights(cls, template: Template, gray_weights: Sequence[int]):
        """Complete ``template`` by giving each gray vertex (in C-order) its weight."""
        grays = template.positions(Color.GRAY)
        if len(gray_weights) != len(grays):
            raise ValueError("one weight per gray vertex")
        w = template.forced_weights()
        for p, gw in zip(grays, gray_weights):
            w[f"G{p}-"] = gw
            w[f"G{p}+"] = gw
        return cls(template, tuple(w[e.id] for e in template.edges()))

    def weight_map(self) -> dict:
        return {e.id: w for e, w in zip(self.template.edges(), self.weights)}

    def gray_weights(self) -> tuple:
        wm = self.weight_map()
        return tuple(wm[f"G{p}-"] for p in self.template.positions(Color.GRAY))

    def key(self) -> tuple:
        return self.template.key() + (self.weights,)

    def to_json(self) -> str:
        return json.dumps(to_dict(self), separators=(",", ":"))


# -- derived quantities ----------------------------------------------------

def divergence(d: FloorDiagram, v) -> int:
    """Weighted in-degree minus weighted out-degree of vertex ``v``."""
    v = tuple(v)
    if v not in set(d.template.vertices()):
        raise KeyError(f"unknown vertex {v!r}")
    total = 0
    for e, w in zip(d.template.edges(), d.weights):
        if e.dst == v:
            total += w
        if e.src == v:
            total -= w
    return total


def multiplicity(d: FloorDiagram) -> int:
    """Product of the weights of internal edges (both endpoints in ``C``)."""
    return prod(w for e, w in zip(d.template.edges(), d.weights) if e.internal)


@dataclass(frozen=True)
class DerivedData:
    x: tuple
    y: tuple
    multiplicities: MultiplicityVector
    bidegree: tuple
    genus: int


def derived_data(d: FloorDiagram, k: int | None = None) -> DerivedData:
    t = d.template
    x = tuple(divergence(d, ("L", i)) for i in range(len(t.l_attach)))
    x += tuple(divergence(d, ("R", i)) for i in range(len(t.r_attach)))
    y = tuple(divergence(d, ("C", p)) for p in t.positions(Color.WHITE))
    mv = MultiplicityVector.from_divergences(x, y)
    return DerivedData(x, y, mv, (t.n_black, mv.b), t.genus())


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    clause: str | None = None
    message: str = ""

    def __bool__(self):
        return self.ok


def validate(d: FloorDiagram, k: int) -> ValidationReport:
    """Check every clause of the definition; report the first failure."""
    t = d.template
    colors = t.colors

    def fail(clause, message):
        return ValidationReport(False, clause, message)

    blacks = t.positions(Color.BLACK)
    if not blacks:
        return fail("color", "no black vertex")
    for p in t.positions(Color.WHITE):
        if t.white_divs[p] == 0:
            return fail("color", f"white vertex at {p} has divergence 0")
    for v in t.l_divs:
        if v >= 0:
            return fail("color", "left label with nonnegative divergence")
    for v in t.r_divs:
        if v <= 0:
            return fail("color", "right label with nonpositive divergence")

    for p, (s, u) in zip(t.positions(Color.GRAY), t.gray_edges):
        if colors[s] is not Color.BLACK or colors[u] is not Color.BLACK:
            return fail("edge", f"gray vertex at {p} not joined to two blacks")
    for p, b in zip(t.positions(Color.WHITE), t.whitec_edges):
        if colors[b] is not Color.BLACK:
            return fail("edge", f"white vertex at {p} not joined to a black")
    for b in t.l_attach + t.r_attach:
        if colors[b] is not Color.BLACK:
            return fail("edge", "label not joined to a black")

    for p, (s, u) in zip(t.positions(Color.GRAY), t.gray_edges):
        if not s < p < u:
            return fail("direction", f"gray vertex at {p} not between its blacks")
    for p, b in zip(t.positions(Color.WHITE), t.whitec_edges):
        if (t.white_divs[p] < 0) != (p < b):
            return fail("direction", f"white vertex at {p} on the wrong side of its black")

    if not t.is_connected():
        return fail("connectivity", "underlying graph is disconnected")
    if t.genus() != 1 - t.n_black + t.n_gray:
        return fail("genus", "Betti number disagrees with 1 - v_B + v_G")

    wm = d.weight_map()
    for e, w in zip(t.edges(), d.weights):
        if w < 1:
            return fail("weight", f"edge {e.id} has non-positive weight {w}")
    for eid, w in t.forced_weights().items():
        if wm[eid] != w:
            return fail("weight", f"edge {eid} has weight {wm[eid]}, expected {w}")

    for p in t.positions(Color.GRAY):
        if divergence(d, ("C", p)) != 0:
            return fail("gray-divergence", f"gray vertex at {p} has nonzero divergence")
    for p in blacks:
        dv = divergence(d, ("C", p))
        if dv != k:
            return fail("black-divergence", f"black vertex at {p} has divergence {dv} != {k}")
    return ValidationReport(True)


def internal_edge_count(t: Template) -> int:
    return sum(1 for e in t.edges() if e.internal)


# -- serialization -----------------------------------------------------------

def to_dict(d: FloorDiagram) -> dict:
    t = d.template
    c = []
    for color, div in zip(t.colors, t.white_divs):
        item = {"color": color.value}
        if div is not None:
            item["div"] = div
        c.append(item)
    return {
        "c": c,
        "l_attach": list(t.l_attach),
        "r_attach": list(t.r_attach),
        "gray_edges": [list(e) for e in t.gray_edges],
        "whitec_edges": list(t.whitec_edges),
        "weights": d.weight_map(),
    }


def from_dict(data: dict) -> FloorDiagram:
    colors = [item["color"] for item in data["c"]]
    divs = [item.get("div") for item in data["c"]]
    weights = data["weights"]
    l_attach = data.get("l_attach", [])
    r_attach = data.get("r_attach", [])
    x = [-weights[f"L{i + 1}"] for i in range(len(l_attach))]
    x += [weights[f"R{i + 1}"] for i in range(len(r_attach))]
    t = Template(colors, divs, data.get("gray_edges", []), data.get("whitec_edges", []),
                 x, l_attach, r_attach)
    return FloorDiagram(t, tuple(weights[e.id] for e in t.edges()))


def from_json(text: str) -> FloorDiagram:
    return from_dict(json.loads(text))


def canonical_serializations(diagrams: Iterable[FloorDiagram]) -> Counter:
    return Counter(d.to_json() for d in diagrams)
