"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 inconsistent input,
3 enumeration budget exhausted, 4 chamber sampling failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, replace

from . import chambers as ch
from . import poly, verify
from .diagram import MultiplicityVector, to_dict
from .enumeration import BudgetExceeded, EnumerationBudget, InconsistentQuery, enumerate_diagrams
from .invariants import InvariantQuery, compute_N, query_from_point

CONFIG_ENV = "FLOORGW_CONFIG"
EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET, EXIT_SAMPLING = 1, 2, 3, 4


@dataclass(frozen=True)
class RunConfig:
    seed: int = 0
    box_bound: int | None = None          # None: 4 (a k + 10)
    max_templates: int = 10**6
    max_lattice_points: int = 10**7
    format: str = "text"
    output: str | None = None

    @property
    def budget(self) -> EnumerationBudget:
        return EnumerationBudget(self.max_templates, self.max_lattice_points)


_CONFIG_TYPES = {"seed": int, "box_bound": int, "max_templates": int,
                 "max_lattice_points": int, "format": str, "output": str}


def read_config(path: str) -> dict:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for n, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{n}: expected key = value")
            key, value = (s.strip() for s in line.split("=", 1))
            key = key.replace("-", "_")
            if key not in _CONFIG_TYPES:
                raise ValueError(f"{path}:{n}: unknown key {key!r}")
            out[key] = _CONFIG_TYPES[key](value)
    return out


def parse_sparse(text: str | None) -> dict:
    """``"1:2,3:1"`` -> ``{1: 2, 3: 1}``."""
    if not text:
        return {}
    out = {}
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        i, _, c = part.partition(":")
        if not c:
            raise ValueError(f"bad sparse entry {part!r}; expected i:count")
        i, c = int(i), int(c)
        if i < 1 or c < 0:
            raise ValueError(f"bad sparse entry {part!r}")
        out[i] = out.get(i, 0) + c
    return out


def parse_ints(text: str | None) -> tuple:
    if not text:
        return ()
    return tuple(int(v) for v in text.replace(" ", "").split(",") if v)


# -- output -------------------------------------------------------------------

class Output:
    def __init__(self, cfg: RunConfig):
        self.cfg = cfg
        self.fh = open(cfg.output, "w", encoding="utf-8") if cfg.output else sys.stdout

    def line(self, text: str):
        self.fh.write(text + "\n")
        self.fh.flush()

    def json(self, obj):
        self.line(json.dumps(obj, sort_keys=True, separators=(",", ":")))

    def close(self):
        if self.fh is not sys.stdout:
            self.fh.close()


def _mv_dict(mv: MultiplicityVector) -> dict:
    return {name: {str(i): c for i, c in seq.items()} for name, seq in mv.sparse().items()}


# -- commands -----------------------------------------------------------------------

def cmd_invariant(args, cfg: RunConfig, out: Output) -> int:
    if args.a == 0:
        raise InconsistentQuery("a = 0 is excluded: those invariants are rational, not integers")
    mv = MultiplicityVector.from_sparse(parse_sparse(args.alpha), parse_sparse(args.beta),
                                        parse_sparse(args.alpha_tilde), parse_sparse(args.beta_tilde))
    q = InvariantQuery(args.a, args.b, args.k, args.g, mv)
    if args.list_diagrams:
        total = 0
        for d, m in enumerate_diagrams(q.enumeration_query(), cfg.budget):
            total += m
            out.json({"diagram": to_dict(d), "multiplicity": m, "running_sum": total})
        value = total
    else:
        value = compute_N(q, cfg.budget)
    if cfg.format == "text" and not args.list_diagrams:
        out.line(str(value))
    else:
        out.json({"query": q.label(), "l": q.l, "value": value})
    return 0


def cmd_f(args, cfg: RunConfig, out: Output) -> int:
    x, y = parse_ints(args.x), parse_ints(args.y)
    q = query_from_point(args.a, args.k, args.g, x, y)
    value = compute_N(q, cfg.budget)
    label = None
    if args.a == 2 and len(x) == 2 and len(y) == 1 and args.k >= 1:
        try:
            label = ch.table1_label(ch.signature(ch.table1_arrangement(args.k), x + y))
        except ch.PointOnWall:
            label = None
    report = {"value": value, "query": q.label(), "a": q.a, "b": q.b, "k": q.k, "g": q.g,
              "multiplicities": _mv_dict(q.mv), "chamber": label}
    if cfg.format == "text":
        out.line(str(value))
        out.line(f"query {q.label()}  (alpha,beta,alpha~,beta~) = ({q.mv.compact()})  b = {q.b}")
        if label:
            out.line(f"chamber {label}")
    else:
        out.json(report)
    return 0


def cmd_chamber_poly(args, cfg: RunConfig, out: Output) -> int:
    arr = ch.build_arrangement(args.n1, args.n2, args.a, args.k)
    if args.point:
        sig = ch.signature(arr, parse_ints(args.point))
    elif args.signature:
        sig = ch.Signature.parse(args.signature)
        if len(sig.signs) != len(arr.forms):
            raise InconsistentQuery(f"signature needs {len(arr.forms)} signs")
    else:
        raise InconsistentQuery("give --point or --signature")
    kw = dict(seed=cfg.seed, budget=cfg.budget, arrangement=arr, box_bound=cfg.box_bound)
    try:
        piece, _ = poly.chamber_polynomial(args.a, args.k, args.g, args.n1, args.n2, sig, **kw)
    except poly.RankDeficient as exc:
        # thin chamber: lattice points lie on a proper subspace
        print(f"warning: {exc}; fitting the lowest-degree representative", file=sys.stderr)
        piece, _ = poly.chamber_polynomial(args.a, args.k, args.g, args.n1, args.n2, sig,
                                           allow_degenerate=True, **kw)
    rep = poly.degree_parity_report(piece, args.a, args.g, args.n2, args.k)
    if cfg.format == "latex":
        out.line(piece.polynomial.to_latex())
    elif cfg.format == "text":
        out.line(piece.polynomial.to_text())
        out.line(f"signature {piece.signature}  method {piece.method}  "
                 f"degree {rep.degree} (expected {rep.expected_degree})  {rep.note}")
    else:
        d = piece.to_dict()
        d["report"] = rep.to_dict()
        d["arrangement"] = ch.arrangement_json(arr, sig)
        out.json(d)
    return 0


def cmd_verify(args, cfg: RunConfig, out: Output) -> int:
    kw = {}
    if args.suite == "table1":
        if args.k is not None:
            kw["ks"] = (args.k,)
        if args.g is not None:
            kw["gs"] = (args.g,)
        kw["seed"] = cfg.seed
    elif args.suite in ("oracle", "reciprocity", "inclusion-exclusion"):
        if args.trials is not None:
            kw["trials"] = args.trials
        kw["seed"] = cfg.seed if args.seed is not None else \
            {"oracle": 7}.get(args.suite, 0)
    rep = verify.SUITES[args.suite](**kw)
    if cfg.format == "text":
        for c in rep.checks:
            line = f"{'PASS' if c.passed else 'FAIL'}  {c.name}"
            if not c.passed and isinstance(c.detail, dict):
                why = c.detail.get("reason") or c.detail.get("error") or c.detail.get("note")
                if why:
                    line += f"  ({why})"
            out.line(line)
        out.line(f"{rep.suite}: {'pass' if rep.passed else 'FAIL'}")
    else:
        out.json(rep.to_dict())
    return 0 if rep.passed else EXIT_FAIL


# -- parser ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int)
    common.add_argument("--box-bound", type=int)
    common.add_argument("--max-templates", type=int)
    common.add_argument("--max-lattice-points", type=int)
    common.add_argument("--format", choices=("text", "json", "jsonl", "latex"))
    common.add_argument("--output")
    common.add_argument("--config", help=f"key=value config file (default: ${CONFIG_ENV})")

    p = argparse.ArgumentParser(prog="floorgw", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    inv = sub.add_parser("invariant", parents=[common], help="N as a sum over floor diagrams")
    for name in ("a", "b", "k", "g"):
        inv.add_argument(f"--{name}", type=int, required=True)
    for name in ("alpha", "beta", "alpha-tilde", "beta-tilde"):
        inv.add_argument(f"--{name}", default="", help="sparse i:count,i:count")
    inv.add_argument("--list-diagrams", action="store_true")
    inv.set_defaults(func=cmd_invariant)

    f = sub.add_parser("f", parents=[common], help="F at a lattice point (x, y)")
    for name in ("a", "k", "g"):
        f.add_argument(f"--{name}", type=int, required=True)
    f.add_argument("--x", default="", type=str)
    f.add_argument("--y", default="", type=str)
    f.set_defaults(func=cmd_f)

    cp = sub.add_parser("chamber-poly", parents=[common], help="polynomial piece of a chamber")
    for name in ("a", "k", "g", "n1", "n2"):
        cp.add_argument(f"--{name}", type=int, required=True)
    cp.add_argument("--signature")
    cp.add_argument("--point")
    cp.set_defaults(func=cmd_chamber_poly)

    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("suite", choices=sorted(verify.SUITES))
    v.add_argument("--k", type=int)
    v.add_argument("--g", type=int)
    v.add_argument("--trials", type=int)
    v.set_defaults(func=cmd_verify)
    return p


def _fix_negative_lists(argv):
    """Let ``--x -1,3`` through argparse, which would read ``-1,3`` as a flag."""
    out = []
    it = iter(argv)
    for tok in it:
        if tok in ("--x", "--y", "--point", "--signature"):
            nxt = next(it, None)
            out.append(f"{tok}={nxt}" if nxt is not None else tok)
        else:
            out.append(tok)
    return out


def make_config(args) -> RunConfig:
    cfg = RunConfig()
    path = args.config or os.environ.get(CONFIG_ENV)
    if path:
        cfg = replace(cfg, **read_config(path))
    for key in ("seed", "box_bound", "max_templates", "max_lattice_points", "format", "output"):
        val = getattr(args, key, None)
        if val is not None:
            cfg = replace(cfg, **{key: val})
    return cfg


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(_fix_negative_lists(argv))
    try:
        cfg = make_config(args)
        out = Output(cfg)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args, cfg, out)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (poly.SamplingFailure, poly.RankDeficient) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SAMPLING
    except (InconsistentQuery, ch.NotInLattice, ch.PointOnWall, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    finally:
        out.close()


if __name__ == "__main__":
    sys.exit(main())
