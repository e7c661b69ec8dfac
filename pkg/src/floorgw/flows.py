"""Lattice points of flow polytopes and (weighted) vector partition functions.

The flow polytope of a directed graph ``G`` with divergence targets ``d`` is
``{w >= 0 : A w = d}`` where ``A`` is the vertex-edge adjacency matrix (``+1``
at the head of an edge, ``-1`` at its tail).  On an acyclic graph it is a
bounded lattice polytope, and its lattice points are enumerated here by
fixing the flow on the edges outside a spanning forest and propagating.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from math import prod
from typing import Iterator, Sequence

from . import exact


class UnboundedPolytope(ValueError):
    def __init__(self, ray):
        super().__init__(f"flow polytope is unbounded along the directed cycle {ray}")
        self.ray = tuple(ray)


class NotPointed(ValueError):
    pass


# -- flow problems ---------------------------------------------------------------

@dataclass(frozen=True)
class FlowProblem:
    """A directed graph on vertices ``0..n-1`` and a divergence target per vertex."""

    n_vertices: int
    edges: tuple
    d_vec: tuple

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        object.__setattr__(self, "d_vec", tuple(int(v) for v in self.d_vec))
        if len(self.d_vec) != self.n_vertices:
            raise ValueError("one divergence per vertex")
        for u, v in self.edges:
            if not (0 <= u < self.n_vertices and 0 <= v < self.n_vertices) or u == v:
                raise ValueError(f"bad edge {(u, v)}")

    def adjacency_matrix(self) -> list:
        a = [[0] * len(self.edges) for _ in range(self.n_vertices)]
        for j, (u, v) in enumerate(self.edges):
            a[v][j] += 1
            a[u][j] -= 1
        return a

    def dilate(self, t: int) -> "FlowProblem":
        return FlowProblem(self.n_vertices, self.edges, tuple(t * v for v in self.d_vec))

    def divergence(self, w) -> tuple:
        div = [0] * self.n_vertices
        for (u, v), x in zip(self.edges, w):
            div[v] += x
            div[u] -= x
        return tuple(div)

    def cycle_rank(self) -> int:
        parent = list(range(self.n_vertices))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        components = self.n_vertices
        for u, v in self.edges:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
                components -= 1
        return len(self.edges) - self.n_vertices + components


def find_directed_cycle(n: int, edges: Sequence) -> list | None:
    """Return the edge indices of some directed cycle, or None if acyclic."""
    out = [[] for _ in range(n)]
    for j, (u, v) in enumerate(edges):
        out[u].append((v, j))
    state = [0] * n
    for root in range(n):
        if state[root]:
            continue
        stack = [(root, iter(out[root]))]
        path_edges = []
        on_path = {root: 0}
        state[root] = 1
        while stack:
            node, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                state[node] = 2
                stack.pop()
                on_path.pop(node, None)
                if path_edges:
                    path_edges.pop()
                continue
            v, j = nxt
            if state[v] == 1:
                return path_edges[on_path[v]:] + [j]
            if state[v] == 0:
                state[v] = 1
                on_path[v] = len(path_edges) + 1
                path_edges.append(j)
                stack.append((v, iter(out[v])))
    return None


class FlowSolver:
    """Enumerates integer flows of a fixed graph for varying divergence targets.

    Edges outside a spanning forest are the free coordinates; every forest
    edge is an affine function of them and of ``d``.  Free coordinates are
    assigned depth-first, each within the interval still compatible with the
    bounds on all forest edges.
    """

    def __init__(self, n_vertices: int, edges: Sequence):
        self.n = n_vertices
        self.edges = [tuple(e) for e in edges]
        cycle = find_directed_cycle(n_vertices, self.edges)
        if cycle is not None:
            ray = [0] * len(self.edges)
            for j in cycle:
                ray[j] = 1
            raise UnboundedPolytope(ray)

        parent = list(range(n_vertices))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        tree, free = [], []
        for j, (u, v) in enumerate(self.edges):
            ru, rv = find(u), find(v)
            if ru == rv:
                free.append(j)
            else:
                parent[ru] = rv
                tree.append(j)
        self.tree = tree
        self.free = free
        self.components = {}
        for i in range(n_vertices):
            self.components.setdefault(find(i), []).append(i)

        adj = [[] for _ in range(n_vertices)]
        for j in tree:
            u, v = self.edges[j]
            adj[u].append((v, j))
            adj[v].append((u, j))
        # for each tree edge: the side containing its head, and the signed
        # coefficients of the free edges crossing into / out of that side
        self.tree_rows = []
        for j in tree:
            u, v = self.edges[j]
            side = {v}
            stack = [v]
            while stack:
                node = stack.pop()
                for nb, jj in adj[node]:
                    if jj != j and nb not in side:
                        side.add(nb)
                        stack.append(nb)
            coefs = []
            for f in free:
                fu, fv = self.edges[f]
                if fv in side and fu not in side:
                    coefs.append(-1)
                elif fu in side and fv not in side:
                    coefs.append(1)
                else:
                    coefs.append(0)
            self.tree_rows.append((j, tuple(sorted(side)), tuple(coefs)))

    @property
    def dimension(self) -> int:
        return len(self.free)

    def _balanced(self, d) -> bool:
        return all(sum(d[i] for i in comp) == 0 for comp in self.components.values())

    def upper_bound(self, d) -> int:
        """Total supply; no edge of an acyclic flow can carry more."""
        return sum(-v for v in d if v < 0)

    def solutions(self, d, lower: int = 0, upper: int | None = None) -> Iterator[tuple]:
        """Yield every integer flow with divergence ``d`` and ``lower <= w <= upper``."""
        if len(d) != self.n:
            raise ValueError("one divergence per vertex")
        if not self._balanced(d):
            return
        if upper is None:
            upper = self.upper_bound(d)
        if upper < lower and self.edges:
            return
        rows = [(j, sum(d[i] for i in side), coefs) for j, side, coefs in self.tree_rows]
        nfree = len(self.free)
        m = len(self.edges)

        if nfree == 0:
            w = [0] * m
            for j, c, _ in rows:
                if not lower <= c <= upper:
                    return
                w[j] = c
            yield tuple(w)
            return

        # per row, the extreme contribution of free coordinates i.. (suffix)
        def suffix(coefs, pick_max):
            out = [0] * (nfree + 1)
            for i in range(nfree - 1, -1, -1):
                c = coefs[i]
                if c > 0:
                    out[i] = out[i + 1] + c * (upper if pick_max else lower)
                else:
                    out[i] = out[i + 1] + c * (lower if pick_max else upper)
            return out

        sup = [suffix(coefs, True) for _, _, coefs in rows]
        inf = [suffix(coefs, False) for _, _, coefs in rows]
        partial = [c for _, c, _ in rows]
        values = [0] * nfree

        def rec(i):
            lo, hi = lower, upper
            for r, (_, _, coefs) in enumerate(rows):
                c = coefs[i]
                base = partial[r]
                # base + c*t + rest, rest in [inf[r][i+1], sup[r][i+1]]
                if c == 0:
                    if base + sup[r][i + 1] < lower or base + inf[r][i + 1] > upper:
                        return
                    continue
                need_lo = lower - base - sup[r][i + 1]
                need_hi = upper - base - inf[r][i + 1]
                if c > 0:
                    lo = max(lo, -((-need_lo) // c))
                    hi = min(hi, need_hi // c)
                else:
                    lo = max(lo, -(need_hi // -c))
                    hi = min(hi, -need_lo // -c)
                if lo > hi:
                    return
            for t in range(lo, hi + 1):
                values[i] = t
                for r, (_, _, coefs) in enumerate(rows):
                    partial[r] += coefs[i] * t
                if i + 1 == nfree:
                    w = [0] * m
                    ok = True
                    for r, (j, _, _) in enumerate(rows):
                        if not lower <= partial[r] <= upper:
                            ok = False
                            break
                        w[j] = partial[r]
                    if ok:
                        for f, val in zip(self.free, values):
                            w[f] = val
                        yield tuple(w)
                else:
                    yield from rec(i + 1)
                for r, (_, _, coefs) in enumerate(rows):
                    partial[r] -= coefs[i] * t

        yield from rec(0)

    def square_product_sum(self, d, lower: int = 1, upper: int | None = None) -> int:
        """Sum over the flows of :meth:`solutions` of the product of squared weights.

        Flow spaces of dimension 0 or 1 are summed directly; higher dimensions
        go through :meth:`solutions`.
        """
        if len(self.free) > 1:
            return sum(prod(w * w for w in sol) for sol in self.solutions(d, lower, upper))
        if len(d) != self.n or not self._balanced(d):
            return 0
        if upper is None:
            upper = self.upper_bound(d)
        rows = [(sum(d[i] for i in side), coefs[0] if coefs else 0)
                for _, side, coefs in self.tree_rows]
        if not self.free:
            out = 1
            for c, _ in rows:
                if not lower <= c <= upper:
                    return 0
                out *= c * c
            return out
        lo, hi = lower, upper
        fixed = 1
        moving = []
        for c, s in rows:
            if s == 0:
                if not lower <= c <= upper:
                    return 0
                fixed *= c * c
            elif s > 0:
                lo, hi = max(lo, lower - c), min(hi, upper - c)
                moving.append((c, 1))
            else:
                lo, hi = max(lo, c - upper), min(hi, c - lower)
                moving.append((c, -1))
        total = 0
        for t in range(lo, hi + 1):
            p = t * t
            for c, s in moving:
                w = c + s * t
                p *= w * w
            total += p
        return fixed * total


def lattice_points(p: FlowProblem, strict: bool = False) -> list:
    """All integer flows of ``p`` with ``w >= 0`` (``w >= 1`` when strict)."""
    solver = FlowSolver(p.n_vertices, p.edges)
    return list(solver.solutions(p.d_vec, lower=1 if strict else 0))


# -- vector configurations --------------------------------------------------------

@dataclass(frozen=True)
class VectorConfig:
    """A finite multiset of integer vectors, all of the same dimension.

    ``certificate`` is an integer functional positive on every vector; it is
    searched for when not supplied and its absence means the configuration
    is not pointed.
    """

    vectors: tuple
    certificate: tuple | None = None

    def __post_init__(self):
        vecs = tuple(tuple(int(c) for c in v) for v in self.vectors)
        if not vecs:
            raise ValueError("empty configuration")
        dim = len(vecs[0])
        if any(len(v) != dim for v in vecs):
            raise ValueError("vectors of different dimensions")
        object.__setattr__(self, "vectors", vecs)
        cert = self.certificate
        if cert is None:
            cert = find_pointedness_certificate(vecs)
            if cert is None:
                raise NotPointed("configuration is not pointed")
        cert = tuple(int(c) for c in cert)
        if any(_dot(cert, v) <= 0 for v in vecs):
            raise NotPointed("certificate is not positive on every vector")
        object.__setattr__(self, "certificate", cert)

    @property
    def dim(self) -> int:
        return len(self.vectors[0])

    def __len__(self):
        return len(self.vectors)

    def rank(self) -> int:
        return exact.rank(self.matrix())

    def matrix(self) -> list:
        """The ``dim x m`` matrix whose columns are the vectors."""
        return [[v[i] for v in self.vectors] for i in range(self.dim)]

    def extended(self, extra_indices) -> "VectorConfig":
        """The multiset with a second copy of the listed vectors appended."""
        vecs = self.vectors + tuple(self.vectors[i] for i in extra_indices)
        return VectorConfig(vecs, self.certificate)


def _dot(u, v) -> int:
    return sum(a * b for a, b in zip(u, v))


def find_pointedness_certificate(vectors, max_norm: int = 12):
    if any(all(c == 0 for c in v) for v in vectors):
        return None
    dim = len(vectors[0])
    for r in range(1, max_norm + 1):
        for phi in product(range(-r, r + 1), repeat=dim):
            if max(abs(c) for c in phi) != r:
                continue
            if all(_dot(phi, v) > 0 for v in vectors):
                return phi
    return None


def _weighted_count(x: VectorConfig, weighted: frozenset, c) -> int:
    vecs = x.vectors
    phi = x.certificate
    m = len(vecs)
    phis = [_dot(phi, v) for v in vecs]

    @lru_cache(maxsize=None)
    def rec(i, rem):
        if i == m:
            return 1 if not any(rem) else 0
        budget = _dot(phi, rem)
        if budget < 0:
            return 0
        total = 0
        v = vecs[i]
        for z in range(budget // phis[i] + 1):
            sub = rec(i + 1, tuple(r - z * a for r, a in zip(rem, v)))
            if sub:
                total += (z if i in weighted else 1) * sub
        return total

    return rec(0, tuple(int(v) for v in c))


def partition_function(x: VectorConfig, c) -> int:
    """Number of ways to write ``c`` as a nonnegative integer combination of ``x``."""
    if len(c) != x.dim:
        raise ValueError("dimension mismatch")
    return _weighted_count(x, frozenset(), c)


def weighted_partition_function(x: VectorConfig, y: Sequence[int], c) -> int:
    """Sum over nonnegative decompositions ``z`` of ``c`` of ``prod_{i in y} z_i``."""
    if len(c) != x.dim:
        raise ValueError("dimension mismatch")
    y = frozenset(y)
    if not y <= set(range(len(x))):
        raise ValueError("weight indices out of range")
    return _weighted_count(x, y, c)


def config_lattice_points(x: VectorConfig, c) -> Iterator[tuple]:
    """Enumerate every ``z >= 0`` with ``sum z_i a_i = c``."""
    vecs = x.vectors
    phis = [_dot(x.certificate, v) for v in vecs]
    m = len(vecs)
    z = [0] * m

    def rec(i, rem):
        if i == m:
            if not any(rem):
                yield tuple(z)
            return
        budget = _dot(x.certificate, rem)
        if budget < 0:
            return
        for val in range(budget // phis[i] + 1):
            z[i] = val
            yield from rec(i + 1, tuple(r - val * a for r, a in zip(rem, vecs[i])))
        z[i] = 0

    yield from rec(0, tuple(c))


@dataclass(frozen=True)
class InclusionExclusion:
    holds: bool
    weighted: int
    alternating: int


def inclusion_exclusion_check(x: VectorConfig, y: Sequence[int], c) -> InclusionExclusion:
    """Compare the weighted count with the alternating sum of plain counts.

    The right-hand side sums ``(-1)^{|Y - T|}`` times the partition function
    of ``X`` with a second copy of ``T`` appended, over all ``T`` in ``Y``.
    """
    y = sorted(set(y))
    lhs = weighted_partition_function(x, y, c)
    rhs = 0
    for size in range(len(y) + 1):
        for t in combinations(y, size):
            rhs += (-1) ** (len(y) - size) * partition_function(x.extended(t), c)
    return InclusionExclusion(lhs == rhs, lhs, rhs)


# -- weighted Ehrhart data ------------------------------------------------------

@dataclass(frozen=True)
class EhrhartRow:
    t: int
    closed: int
    interior: int


def weighted_ehrhart_data(p: FlowProblem, y: Sequence[int], t_max: int) -> list:
    """For ``t = 1..t_max``, the ``pi_Y``-weighted lattice-point sums of the
    ``t``-th dilate (all ``d`` entries scaled by ``t``) and of its interior
    (strictly positive flows)."""
    solver = FlowSolver(p.n_vertices, p.edges)
    y = tuple(y)
    rows = []
    for t in range(1, t_max + 1):
        d = tuple(t * v for v in p.d_vec)
        closed = sum(prod(w[i] for i in y) for w in solver.solutions(d, lower=0))
        interior = sum(prod(w[i] for i in y) for w in solver.solutions(d, lower=1))
        rows.append(EhrhartRow(t, closed, interior))
    return rows


@dataclass(frozen=True)
class ReciprocityReport:
    holds: bool
    dimension: int
    degree: int
    coefficients: tuple
    fit_exact: bool
    checks: tuple  # (t, fitted closed count at -t, signed interior count at t)


def reciprocity_check(p: FlowProblem, y: Sequence[int], t_checks: int = 3) -> ReciprocityReport:
    """Fit the closed weighted Ehrhart polynomial and test it at negative ``t``.

    The fit uses ``t = 1..D+2`` with ``D = dim + |Y|``, one point more than
    needed, so a non-polynomial count shows up as ``fit_exact = False``.
    Assumes the polytope contains a strictly positive flow, so its relative
    interior is the set of strictly positive flows.
    """
    y = tuple(y)
    dim = FlowSolver(p.n_vertices, p.edges).dimension
    degree = dim + len(y)
    t_max = max(degree + 2, t_checks)
    data = weighted_ehrhart_data(p, y, t_max)
    fit_points = [(r.t, r.closed) for r in data[: degree + 1]]
    coeffs = exact.lagrange_coefficients(fit_points)
    fit_exact = all(exact.eval_univariate(coeffs, r.t) == r.closed for r in data[: degree + 2])
    fit_exact = fit_exact and len(coeffs) <= degree + 1
    sign = -1 if degree % 2 else 1
    checks = []
    ok = fit_exact
    for r in data[:t_checks]:
        at_neg = exact.eval_univariate(coeffs, -r.t)
        signed = sign * r.interior
        checks.append((r.t, at_neg, signed))
        ok = ok and at_neg == signed
    return ReciprocityReport(ok, dim, degree, tuple(coeffs), fit_exact, tuple(checks))


# -- unimodularity -------------------------------------------------------------------

def unimodularity_check(x) -> bool:
    """True iff every maximal (rank-sized) minor of the column matrix lies in {-1, 0, 1}.

    ``x`` is a :class:`VectorConfig` or a plain list of column vectors.
    """
    vectors = x.vectors if isinstance(x, VectorConfig) else [tuple(v) for v in x]
    dim = len(vectors[0])
    matrix = [[v[i] for v in vectors] for i in range(dim)]
    return matrix_is_unimodular(matrix)


def matrix_is_unimodular(matrix) -> bool:
    r = exact.rank(matrix)
    if r == 0:
        return True
    return all(m in (-1, 0, 1) for m in exact.minors(matrix, r))
