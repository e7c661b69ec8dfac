"""Naive generator of floor diagrams, used to cross-check the enumerator.

It tries every color word, every arrangement of the white divergences,
every choice of edge endpoints, every label attachment and every gray weight
up to the total positive divergence, and keeps what :func:`validate` accepts.
Only usable on tiny queries.
"""

from __future__ import annotations

from itertools import product

from .diagram import Color, FloorDiagram, Template, validate
from .enumeration import EnumerationQuery


def distinct_permutations(items):
    items = sorted(items)
    n = len(items)
    out = []
    used = [False] * n
    seq = []

    def rec():
        if len(seq) == n:
            out.append(tuple(seq))
            return
        prev = object()
        for i in range(n):
            if used[i] or items[i] == prev:
                continue
            prev = items[i]
            used[i] = True
            seq.append(items[i])
            rec()
            seq.pop()
            used[i] = False

    rec()
    return out


def weight_bound(q: EnumerationQuery) -> int:
    return sum(v for v in q.x + q.c_divs if v > 0) + q.a * q.k


def brute_force_diagrams(q: EnumerationQuery) -> list:
    n_gray = q.n_gray
    if n_gray < 0:
        return []
    word_items = ["B"] * q.a + ["G"] * n_gray + ["W"] * len(q.c_divs)
    wmax = weight_bound(q)
    l_divs, r_divs = q.l_divs, q.r_divs
    found = []
    for word in distinct_permutations(word_items):
        blacks = [p for p, c in enumerate(word) if c == "B"]
        grays = [p for p, c in enumerate(word) if c == "G"]
        whites = [p for p, c in enumerate(word) if c == "W"]
        colors = [{"B": Color.BLACK, "G": Color.GRAY, "W": Color.WHITE}[c] for c in word]
        for yv in distinct_permutations(q.c_divs):
            divs = [None] * len(word)
            for p, v in zip(whites, yv):
                divs[p] = v
            gray_opts = [[(s, t) for s in blacks for t in blacks if s < p < t] for p in grays]
            white_opts = [[b for b in blacks if (p < b if v < 0 else b < p)]
                          for p, v in zip(whites, yv)]
            for ge in product(*gray_opts):
                for we in product(*white_opts):
                    for la in product(blacks, repeat=len(l_divs)):
                        for ra in product(blacks, repeat=len(r_divs)):
                            t = Template(colors, divs, ge, we, l_divs + r_divs, la, ra)
                            if not t.is_connected():
                                continue
                            base = {b: 0 for b in blacks}
                            for v, b in zip(yv, we):
                                base[b] -= v
                            for v, b in zip(l_divs + r_divs, la + ra):
                                base[b] -= v
                            for ws in product(range(1, wmax + 1), repeat=n_gray):
                                div = dict(base)
                                for (s, u), w in zip(ge, ws):
                                    div[s] -= w
                                    div[u] += w
                                if any(v != q.k for v in div.values()):
                                    continue
                                d = FloorDiagram.from_gray_weights(t, ws)
                                if validate(d, q.k):
                                    found.append(d)
    return found
