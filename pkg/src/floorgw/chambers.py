"""Hyperplane arrangements on the lattice of divergence sequences.

Points are full vectors ``(x_1..x_n1, y_1..y_n2)`` satisfying
``sum x + sum y + a k = 0``.  One coordinate is eliminated to get free
coordinates: the last ``x`` if ``n1 > 0``, otherwise the last ``y``.

A wall is a linear form ``sum_S x_i + sum_T y_j + r k``.  Chambers are
identified by the sign vector of a point on all walls.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence


class PointOnWall(ValueError):
    def __init__(self, form):
        super().__init__(f"point lies on the wall {form.name()} = 0")
        self.form = form


class NotInLattice(ValueError):
    pass


@dataclass(frozen=True)
class Form:
    x_coeffs: tuple
    y_coeffs: tuple
    const_times_k: int

    def value(self, point: Sequence[int], k: int) -> int:
        n1 = len(self.x_coeffs)
        return (sum(c * v for c, v in zip(self.x_coeffs, point[:n1]))
                + sum(c * v for c, v in zip(self.y_coeffs, point[n1:]))
                + self.const_times_k * k)

    def name(self) -> str:
        parts = []
        names = [f"x{i + 1}" for i in range(len(self.x_coeffs))]
        names += [f"y{j + 1}" for j in range(len(self.y_coeffs))]
        for c, nm in zip(self.x_coeffs + self.y_coeffs, names):
            if c:
                parts.append(_signed(c, nm, not parts))
        if self.const_times_k:
            parts.append(_signed(self.const_times_k, "k", not parts))
        return "".join(parts) or "0"

    def to_dict(self) -> dict:
        return {"x_coeffs": list(self.x_coeffs), "y_coeffs": list(self.y_coeffs),
                "const_times_k": self.const_times_k}


def _signed(c, name, first):
    mag = "" if abs(c) == 1 else str(abs(c))
    if c < 0:
        return f"-{mag}{name}"
    return f"{mag}{name}" if first else f"+{mag}{name}"


def eliminated_index(n1: int, n2: int) -> int:
    if n1 + n2 < 1:
        raise ValueError("need at least one coordinate")
    return n1 - 1 if n1 > 0 else n1 + n2 - 1


def free_names(n1: int, n2: int) -> list:
    names = [f"x{i + 1}" for i in range(n1)] + [f"y{j + 1}" for j in range(n2)]
    del names[eliminated_index(n1, n2)]
    return names


def complete_point(free: Sequence[int], n1: int, n2: int, a: int, k: int) -> tuple:
    """Insert the eliminated coordinate so the point lies in the lattice."""
    e = eliminated_index(n1, n2)
    free = list(free)
    return tuple(free[:e] + [-sum(free) - a * k] + free[e:])


def free_part(point: Sequence[int], n1: int, n2: int) -> tuple:
    e = eliminated_index(n1, n2)
    return tuple(point[:e]) + tuple(point[e + 1:])


def _reduced(form: Form, n1: int, n2: int, a: int, k: int) -> tuple:
    """Coefficients on the free coordinates and the constant, on the lattice."""
    coeffs = list(form.x_coeffs + form.y_coeffs)
    e = eliminated_index(n1, n2)
    ce = coeffs.pop(e)
    return tuple(c - ce for c in coeffs) + ((form.const_times_k - a * ce) * k,)


def _canonical(red: tuple) -> tuple:
    neg = tuple(-c for c in red)
    return min(red, neg)


@dataclass(frozen=True)
class Arrangement:
    n1: int
    n2: int
    a: int
    k: int
    forms: tuple

    @property
    def n_free(self) -> int:
        return self.n1 + self.n2 - 1

    def in_lattice(self, point) -> bool:
        return len(point) == self.n1 + self.n2 and sum(point) + self.a * self.k == 0

    def signature(self, point) -> "Signature":
        return signature(self, point)

    def to_dict(self) -> dict:
        return {"n1": self.n1, "n2": self.n2, "a": self.a, "k": self.k,
                "forms": [f.to_dict() for f in self.forms]}


@dataclass(frozen=True)
class Signature:
    signs: tuple

    def __str__(self):
        return "".join("+" if s > 0 else "-" for s in self.signs)

    @classmethod
    def parse(cls, text: str) -> "Signature":
        text = text.replace("−", "-").replace(" ", "")
        if not text or any(ch not in "+-" for ch in text):
            raise ValueError(f"bad signature {text!r}")
        return cls(tuple(1 if ch == "+" else -1 for ch in text))


def build_arrangement(n1: int, n2: int, a: int, k: int) -> Arrangement:
    """All walls ``sum_S x + sum_T y + r k`` (``0 <= r <= a``) and ``y_i - y_j``,
    with forms that agree up to sign on the lattice merged and forms that are
    constant on the lattice dropped.  Each wall keeps its first representative
    in the order: smaller support first, then by index, then by ``r``."""
    if n1 + n2 < 1:
        raise ValueError("n1 + n2 must be positive")
    if a < 1 or k < 0:
        raise ValueError("a must be positive and k nonnegative")
    n = n1 + n2
    seen = set()
    forms = []

    def add(form):
        red = _reduced(form, n1, n2, a, k)
        if not any(red[:-1]):
            return
        key = _canonical(red)
        if key in seen:
            return
        seen.add(key)
        forms.append(form)

    for size in range(1, n + 1):
        for support in combinations(range(n), size):
            coeffs = [1 if i in support else 0 for i in range(n)]
            for r in range(a + 1):
                add(Form(tuple(coeffs[:n1]), tuple(coeffs[n1:]), r))
    for i, j in combinations(range(n2), 2):
        yc = [0] * n2
        yc[i], yc[j] = 1, -1
        add(Form((0,) * n1, tuple(yc), 0))
    return Arrangement(n1, n2, a, k, tuple(forms))


# -- the six-wall arrangement for (n1, n2, a) = (2, 1, 2) ------------------------

TABLE1_VARIABLES = ("x1", "x2", "y1")


def table1_arrangement(k: int) -> Arrangement:
    """Walls ``v = 0`` and ``v + k = 0`` for ``v`` in ``x1, x2, y1``."""
    forms = []
    for i in range(3):
        c = [0, 0, 0]
        c[i] = 1
        for r in (0, 1):
            forms.append(Form(tuple(c[:2]), (c[2],), r))
    return Arrangement(2, 1, 2, k, tuple(forms))


def table1_label(sig: Signature) -> str:
    """Three symbols for ``x1, x2, y1``: ``+`` (positive), ``0`` (between
    ``-k`` and 0) or ``-`` (below ``-k``)."""
    out = []
    for i in range(3):
        s0, s1 = sig.signs[2 * i], sig.signs[2 * i + 1]
        if s0 > 0 and s1 > 0:
            out.append("+")
        elif s0 < 0 and s1 > 0:
            out.append("0")
        elif s0 < 0 and s1 < 0:
            out.append("-")
        else:
            out.append("?")
    return "".join(out)


def label_signature(label: str) -> Signature:
    label = label.replace("−", "-").replace(" ", "")
    if len(label) != 3 or any(ch not in "+0-" for ch in label):
        raise ValueError(f"bad chamber label {label!r}")
    signs = []
    for ch in label:
        signs += {"+": [1, 1], "0": [-1, 1], "-": [-1, -1]}[ch]
    return Signature(tuple(signs))


# -- classification and sampling ----------------------------------------------------

def signature(arr: Arrangement, point) -> Signature:
    point = tuple(point)
    if not arr.in_lattice(point):
        raise NotInLattice("point is not in the lattice: sum x + sum y + a k != 0")
    signs = []
    for f in arr.forms:
        v = f.value(point, arr.k)
        if v == 0:
            raise PointOnWall(f)
        signs.append(1 if v > 0 else -1)
    return Signature(tuple(signs))


def _matches(arr, sig, point) -> bool:
    for f, s in zip(arr.forms, sig.signs):
        v = f.value(point, arr.k)
        if v * s <= 0:
            return False
    return True


def default_box(a: int, k: int) -> int:
    return 4 * (a * k + 10)


@dataclass(frozen=True)
class ChamberSample:
    points: tuple
    requested: int
    complete: bool


def _linear_constraints(arr: Arrangement, sig: Signature, bound: int) -> list:
    """Constraints ``c . free + d > 0`` describing the chamber inside the box."""
    n1, n2 = arr.n1, arr.n2
    cons = []
    for f, s in zip(arr.forms, sig.signs):
        red = _reduced(f, n1, n2, arr.a, arr.k)
        cons.append((tuple(s * c for c in red[:-1]), s * red[-1]))
    m = arr.n_free
    # eliminated coordinate within [-B, B]: -sum free - a k >= -B and <= B
    cons.append((tuple([-1] * m), -arr.a * arr.k + bound + 1))
    cons.append((tuple([1] * m), arr.a * arr.k + bound + 1))
    return cons


def chamber_points(arr: Arrangement, sig: Signature, bound: int, limit: int | None = None):
    """Every lattice point of the chamber in the box, by depth-first search over
    the free coordinates with interval pruning.  Stops after ``limit`` points."""
    m = arr.n_free
    cons = _linear_constraints(arr, sig, bound)
    found = []
    free = [0] * m
    if m == 0:
        p = complete_point((), arr.n1, arr.n2, arr.a, arr.k)
        if all(d > 0 for _, d in cons):
            found.append(p)
        return found

    def rec(i, partial):
        lo, hi = -bound, bound
        for (c, _), base in zip(cons, partial):
            rest = sum(abs(cc) for cc in c[i + 1:]) * bound
            ci = c[i]
            # need base + ci t + rest_part > 0 for some rest_part <= rest
            if ci == 0:
                if base + rest <= 0:
                    return False
                continue
            need = -base - rest  # ci t > need
            if ci > 0:
                lo = max(lo, need // ci + 1)
            else:
                hi = min(hi, _ceil_div(-need, -ci) - 1)
            if lo > hi:
                return False
        for t in range(lo, hi + 1):
            free[i] = t
            nxt = [base + c[i] * t for (c, _), base in zip(cons, partial)]
            if i + 1 == m:
                if all(v > 0 for v in nxt):
                    found.append(complete_point(free, arr.n1, arr.n2, arr.a, arr.k))
                    if limit is not None and len(found) >= limit:
                        return True
            elif rec(i + 1, nxt):
                return True
        return False

    rec(0, [d for _, d in cons])
    return found


def _ceil_div(p, q):
    return -(-p // q)


def sample_chamber(arr: Arrangement, sig: Signature, count: int, box_bound: int | None = None,
                   seed: int = 0, exhaustive_limit: int = 200_000) -> ChamberSample:
    """Up to ``count`` distinct lattice points of the chamber ``sig`` with all
    coordinates in ``[-B, B]``, deterministic for a given seed.

    Uniform draws from the box come first; if they find too few points the box
    is searched exhaustively (with pruning) and the finds are shuffled.
    """
    if count < 1:
        raise ValueError("count must be positive")
    if len(sig.signs) != len(arr.forms):
        raise ValueError("signature length does not match the arrangement")
    bound = default_box(arr.a, arr.k) if box_bound is None else box_bound
    rng = random.Random(seed)
    m = arr.n_free
    found = {}
    for _ in range(max(2000, 40 * count)):
        if len(found) >= count:
            break
        free = [rng.randint(-bound, bound) for _ in range(m)]
        p = complete_point(free, arr.n1, arr.n2, arr.a, arr.k)
        if abs(p[eliminated_index(arr.n1, arr.n2)]) > bound:
            continue
        if p not in found and _matches(arr, sig, p):
            found[p] = None
    points = list(found)
    if len(points) < count:
        every = chamber_points(arr, sig, bound, limit=exhaustive_limit)
        rng.shuffle(every)
        have = set(points)
        for p in every:
            if len(points) >= count:
                break
            if p not in have:
                have.add(p)
                points.append(p)
    return ChamberSample(tuple(points), count, len(points) >= count)


def discover_chambers(arr: Arrangement, draws: int, box_bound: int | None = None,
                      seed: int = 0) -> dict:
    """Signatures hit by seeded uniform draws from the box, with their points."""
    bound = default_box(arr.a, arr.k) if box_bound is None else box_bound
    rng = random.Random(seed)
    out = {}
    for _ in range(draws):
        free = [rng.randint(-bound, bound) for _ in range(arr.n_free)]
        p = complete_point(free, arr.n1, arr.n2, arr.a, arr.k)
        if abs(p[eliminated_index(arr.n1, arr.n2)]) > bound:
            continue
        try:
            sig = signature(arr, p)
        except PointOnWall:
            continue
        out.setdefault(str(sig), []).append(p)
    return out


def arrangement_json(arr: Arrangement, sig: Signature | None = None) -> dict:
    out = {"forms": [f.to_dict() for f in arr.forms]}
    if sig is not None:
        out["signature"] = str(sig)
    return out
