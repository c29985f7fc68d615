"""Command-line front end.

Exit codes: 0 success, 2 verification failure, 3 budget exceeded, 4 bad arguments.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from fractions import Fraction
from typing import Sequence

from . import bounds
from .catalog import ALIASES, ENTRIES, catalog
from .graph import Graph, GraphFormatError, SizeError, parse_graph6
from .greedy import (
    HypothesisError,
    NonTermination,
    build_lembest,
    clique_params,
    girth7_params,
    greedy_fractional,
    triangle_free_params,
    verify_fractional_colouring,
)
from .hardcore import INF, PreconditionError
from .pipeline import PipelineConfig, hall_ratio
from .rational import format_decimal, format_rational
from .suites import SUITES

EXIT_OK, EXIT_VERIFY, EXIT_BUDGET, EXIT_ARGS = 0, 2, 3, 4

TABLES = ("table1", "table2", "table3", "thm7", "lemma_vertex", "lemma_edge")
LEMMA_VERTEX = ((3, 2), (3, 3), (5, 2), (5, 3), (4, 3), (4, 4))
LEMMA_EDGE = ((3, 2), (3, 3), (4, 2), (4, 3), (5, 2))
THM7_PIECES = (
    (3, 8, "(2D+9)/5", lambda x: Fraction(2 * x + 9, 5)),
    (8, 20, "(D+7)/3", lambda x: Fraction(x + 7, 3)),
    (20, 48, "(2D+23)/7", lambda x: Fraction(2 * x + 23, 7)),
    (48, 112, "D/4+5", lambda x: Fraction(x, 4) + 5),
)


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_ARGS)


# -- output ----------------------------------------------------------------------

class Table:
    """Rows of string cells with a provenance tag per row."""

    def __init__(self, name: str, columns: Sequence[str]):
        self.name = name
        self.columns = list(columns)
        self.rows: list[dict] = []

    def add(self, **cells) -> None:
        self.rows.append({c: cells.get(c, "") for c in self.columns})

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return json.dumps({"table": self.name, "rows": self.rows}, indent=2, sort_keys=True) + "\n"
        if fmt == "csv":
            buf = io.StringIO()
            w = csv.DictWriter(buf, fieldnames=self.columns, lineterminator="\n")
            w.writeheader()
            w.writerows(self.rows)
            return buf.getvalue()
        widths = [max(len(c), *(len(str(r[c])) for r in self.rows)) if self.rows else len(c) for c in self.columns]
        lines = ["  ".join(c.ljust(w) for c, w in zip(self.columns, widths))]
        for r in self.rows:
            lines.append("  ".join(str(r[c]).ljust(w) for c, w in zip(self.columns, widths)))
        return "\n".join(lines) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(data, args) -> None:
    _emit(json.dumps(data, indent=2, sort_keys=True) + "\n", args.out)


# -- argument helpers --------------------------------------------------------------

def _girth(text: str) -> float:
    if text.lower() in ("inf", "infinity"):
        return math.inf
    return int(text)


def _fugacity(text: str):
    if text.lower() in ("inf", "infinity"):
        return INF
    x = Fraction(text)
    if x <= 0:
        raise argparse.ArgumentTypeError("fugacity must be positive")
    return x


def _delta_range(text: str) -> list[int]:
    """``"3"``, ``"3:8"`` or a comma list of either, e.g. ``"1:10,20"``."""
    out: list[int] = []
    for piece in text.split(","):
        if ":" in piece:
            a, b = piece.split(":")
            out.extend(range(int(a), int(b) + 1))
        else:
            out.append(int(piece))
    return out


def _load_graph(spec: str) -> Graph:
    if spec.startswith("lembest:"):
        return build_lembest(int(spec.split(":", 1)[1]))
    if spec in ENTRIES or spec in ALIASES:
        return catalog(spec)
    if spec.startswith("@"):
        with open(spec[1:]) as fh:
            spec = fh.readline().strip()
    return parse_graph6(spec)


# -- subcommands ---------------------------------------------------------------------

def cmd_hall_ratio(args) -> int:
    log = (lambda s: print(s, file=sys.stderr, flush=True)) if args.verbose else None
    cfg = PipelineConfig(
        prune_mode=args.prune,
        collapse=not args.no_collapse,
        budget=args.budget,
        workers=args.threads,
        log=log,
    )
    res = hall_ratio(args.d, args.g, args.r, args.rooting, cfg)
    data = res.to_json(timing=args.timing)
    data["source"] = "pattern LP, " + ("vertex" if args.rooting == "vertex" else "edge") + " rooted"
    if args.format == "json":
        _emit_json(data, args)
    else:
        t = Table("hall-ratio", ["d", "g", "r", "rooting", "value", "value_decimal", "alpha", "method",
                                 "certified", "patterns", "constraints", "pruned", "self_check"])
        t.add(**{**data, "alpha": " ".join(data["alpha"]), "self_check": "ok" if res.ok else "; ".join(res.self_check)})
        _emit(t.render(args.format), args.out)
    return EXIT_OK if res.ok else EXIT_VERIFY


def _table1() -> Table:
    t = Table("table1", ["d", "triangle_free", "triangle_free_decimal", "no_c3_c5", "no_c3_c5_decimal", "source", "exact"])
    for d, a, b in bounds.shearer_table(10):
        t.add(d=d, triangle_free=format_rational(a), triangle_free_decimal=format_decimal(float(a), 5),
              no_c3_c5=format_rational(b), no_c3_c5_decimal=format_decimal(float(b), 5),
              source="Shearer recurrences", exact="true")
    return t


def _table2() -> Table:
    t = Table("table2", ["d", "lower_bound", "source", "exact", "tol"])
    for d in range(2, 11):
        t.add(d=d, lower_bound=format_decimal(bounds.bollobas_lower(d), 6), source="Bollobas inequality",
              exact="false", tol="1e-12")
    return t


def _table3(deltas: Sequence[int]) -> Table:
    t = Table("table3", ["delta", "value", "k", "lambda", "source", "exact", "tol"])
    for x in deltas:
        b = bounds.triangle_free_chi_f(x)
        t.add(delta=x, value=format_rational(b.value) if b.exact else format_decimal(float(b.value), 6), k=b.k,
              **{"lambda": "inf" if b.lam == INF else format_decimal(b.lam, 6)},
              source=b.source, exact=str(b.exact).lower(), tol="" if b.tol is None else f"{b.tol:g}")
    return t


def _thm7(deltas: Sequence[int]) -> Table:
    t = Table("thm7", ["delta", "value", "value_decimal", "k", "piecewise", "matches", "source", "exact"])
    for x in deltas:
        val, k = bounds.girth7_f(x)
        ties = [j for j in range(1, 65) if 1 + Fraction(16 * x + 2**j, 8 * j) == val]
        pieces = [name for lo, hi, name, f in THM7_PIECES if lo <= x <= hi]
        ok = all(f(x) == val for lo, hi, _, f in THM7_PIECES if lo <= x <= hi)
        t.add(delta=x, value=format_rational(val), value_decimal=format_decimal(float(val), 6),
              k="|".join(map(str, ties)), piecewise=" ".join(pieces), matches=str(ok).lower(),
              source="girth-7 greedy bound", exact="true")
    return t


def _lemma(rooting: str, cases, args) -> Table:
    t = Table(f"lemma_{rooting}", ["d", "r", "value", "value_decimal", "alpha", "method", "constraints", "kept", "self_check"])
    for d, r in cases:
        res = hall_ratio(d, math.inf, r, rooting, PipelineConfig(workers=args.threads))
        t.add(d=d, r=r, value=format_rational(res.value), value_decimal=format_decimal(float(res.value), 6),
              alpha=" ".join(format_rational(a) for a in res.alpha), method=res.method,
              constraints=res.constraints, kept=res.kept, self_check="ok" if res.ok else "FAILED")
    return t


def cmd_table(args) -> int:
    if args.name == "table1":
        t = _table1()
    elif args.name == "table2":
        t = _table2()
    elif args.name == "table3":
        t = _table3(_delta_range(args.delta) if args.delta else bounds.TABLE3_DELTAS)
    elif args.name == "thm7":
        t = _thm7(_delta_range(args.delta) if args.delta else range(1, 113))
    else:
        rooting = "vertex" if args.name == "lemma_vertex" else "edge"
        t = _lemma(rooting, LEMMA_VERTEX if rooting == "vertex" else LEMMA_EDGE, args)
    _emit(t.render(args.format), args.out)
    return EXIT_VERIFY if any(r.get("self_check") == "FAILED" or r.get("matches") == "false" for r in t.rows) else EXIT_OK


def cmd_bound(args) -> int:
    t = Table("bound", ["kind", "delta", "value", "k", "lambda", "source", "exact"])
    for x in _delta_range(args.delta):
        if args.kind == "triangle-free":
            b = bounds.triangle_free_chi_f(x)
            t.add(kind=args.kind, delta=x, value=format_rational(b.value) if b.exact else format_decimal(float(b.value), 6),
                  k=b.k, **{"lambda": "inf" if b.lam == INF else format_decimal(b.lam, 6)}, source=b.source,
                  exact=str(b.exact).lower())
        elif args.kind == "corollary":
            t.add(kind=args.kind, delta=x, value=format_decimal(bounds.corollary_bound(x), 6),
                  source="triangle-free corollary", exact="false")
        elif args.kind == "girth7":
            val, k = bounds.girth7_f(x)
            t.add(kind=args.kind, delta=x, value=format_rational(val), k=k, source="girth-7 greedy bound", exact="true")
        elif args.kind == "bollobas":
            t.add(kind=args.kind, delta=x, value=format_decimal(bounds.bollobas_lower(x), 6),
                  source="Bollobas inequality", exact="false")
        else:
            variant = "triangle_free" if args.kind == "shearer" else "no_c3_c5"
            f = bounds.shearer_recurrence(x, variant)[x]
            t.add(kind=args.kind, delta=x, value=format_rational(1 / f) if f else "inf",
                  source=f"Shearer recurrence ({variant})", exact="true")
    _emit(t.render(args.format), args.out)
    return EXIT_OK


def cmd_greedy(args) -> int:
    g = _load_graph(args.graph)
    if args.params == "clique":
        params = clique_params(g)
    elif args.params == "triangle-free":
        params = triangle_free_params(g, args.k, args.lam if args.lam is not None else Fraction(2))
    else:
        params = girth7_params(g, args.lam if args.lam is not None else Fraction(4))
    try:
        fc = greedy_fractional(g, params, check=not args.no_check)
    except HypothesisError as exc:
        _emit_json({"ok": False, "error": str(exc), "vertex": exc.vertex, "lhs": format_rational(exc.lhs)}, args)
        return EXIT_VERIFY
    except NonTermination as exc:
        _emit_json({"ok": False, "error": str(exc)}, args)
        return EXIT_VERIFY
    report = verify_fractional_colouring(g, fc, params.local_budget(g))
    data = fc.to_json()
    data.update(
        ok=report.ok,
        violations=list(report.violations),
        budget=format_rational(params.budget(g)),
        rounds=fc.rounds,
        family=params.family,
    )
    if args.params == "girth7":
        data["f_max_degree"] = format_rational(bounds.girth7_f(g.max_degree)[0])
    _emit_json(data, args)
    return EXIT_OK if report.ok else EXIT_VERIFY


def cmd_verify(args) -> int:
    reports = [SUITES[name]() for name in (SUITES if args.suite == "all" else [args.suite])]
    if args.format == "json":
        _emit_json([r.to_json() for r in reports], args)
    else:
        t = Table("verify", ["suite", "checks", "ok", "failures"])
        for r in reports:
            t.add(suite=r.name, checks=r.checks, ok=str(r.ok).lower(), failures=" | ".join(r.failures[:5]))
        _emit(t.render(args.format), args.out)
    return EXIT_OK if all(r.ok for r in reports) else EXIT_VERIFY


def cmd_pattern_dump(args) -> int:
    from .girth_patterns import enumerate_girth_patterns
    from .patterns import constraint_bruteforce

    ps = enumerate_girth_patterns(args.d, args.g, args.r, args.rooting, args.budget, collapse=args.collapse)
    lines = []
    for i, p in enumerate(ps):
        if args.limit is not None and i >= args.limit:
            break
        lines.append(json.dumps({"pattern": p.to_json(), "constraint": constraint_bruteforce(p).to_json()}, sort_keys=True))
    _emit("\n".join(lines) + ("\n" if lines else ""), args.out)
    return EXIT_OK


# -- parser --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hallratio", description="Exact Hall ratio bounds, closed-form bounds and greedy fractional colourings.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, formats=("json", "csv", "text"), default="json"):
        sp.add_argument("--format", choices=formats, default=default)
        sp.add_argument("--out", help="write output to this file instead of stdout")
        sp.add_argument("--threads", type=int, default=1, help="worker processes for enumeration")

    h = sub.add_parser("hall-ratio", help="pattern LP bound for (d, g, r, rooting)")
    h.add_argument("--d", type=int, required=True)
    h.add_argument("--g", type=_girth, default=math.inf, help="girth lower bound, or inf")
    h.add_argument("--r", type=int, required=True)
    h.add_argument("--rooting", choices=("vertex", "edge"), required=True)
    h.add_argument("--prune", choices=("weaker", "relative"), default="weaker")
    h.add_argument("--no-collapse", action="store_true", help="keep every pendant leaf")
    h.add_argument("--budget", type=int, default=2_000_000)
    h.add_argument("--timing", action="store_true", help="include wall-clock seconds")
    h.add_argument("--verbose", action="store_true")
    common(h)
    h.set_defaults(func=cmd_hall_ratio)

    t = sub.add_parser("table", help="regenerate a table")
    t.add_argument("name", choices=TABLES)
    t.add_argument("--delta", help="range a:b or list a,b,c (table3, thm7)")
    common(t, default="text")
    t.set_defaults(func=cmd_table)

    b = sub.add_parser("bound", help="closed-form bound for given degrees")
    b.add_argument("--kind", choices=("triangle-free", "corollary", "girth7", "shearer", "shearer-c5", "bollobas"),
                   default="triangle-free")
    b.add_argument("--delta", required=True, help="a value, a range a:b or a list a,b,c")
    common(b, default="text")
    b.set_defaults(func=cmd_bound)

    gr = sub.add_parser("greedy", help="run the greedy fractional colouring")
    gr.add_argument("--graph", required=True, help="catalog name, graph6 string, @file or lembest:D")
    gr.add_argument("--params", choices=("clique", "triangle-free", "girth7"), default="clique")
    gr.add_argument("--family", choices=("all", "maximal", "maximum"), help="implied by --params; checked if given")
    gr.add_argument("--lambda", dest="lam", type=_fugacity)
    gr.add_argument("--k", type=int, default=3)
    gr.add_argument("--no-check", action="store_true", help="skip the per-round hypothesis check")
    common(gr, formats=("json",))
    gr.set_defaults(func=cmd_greedy)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=tuple(SUITES) + ("all",))
    common(v, default="text")
    v.set_defaults(func=cmd_verify)

    pd = sub.add_parser("pattern-dump", help="list patterns and their constraints as JSON lines")
    pd.add_argument("--d", type=int, required=True)
    pd.add_argument("--g", type=_girth, default=math.inf)
    pd.add_argument("--r", type=int, required=True)
    pd.add_argument("--rooting", choices=("vertex", "edge"), required=True)
    pd.add_argument("--collapse", action="store_true")
    pd.add_argument("--limit", type=int)
    pd.add_argument("--budget", type=int, default=200_000)
    common(pd, formats=("json",))
    pd.set_defaults(func=cmd_pattern_dump)
    return p


_FAMILY_OF = {"clique": "maximum", "triangle-free": "all", "girth7": "maximal"}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "threads", 1) < 1:
        parser.error("--threads must be positive")
    if getattr(args, "budget", 1) < 1:
        parser.error("--budget must be positive")
    if args.command == "greedy" and args.family and args.family != _FAMILY_OF[args.params]:
        parser.error(f"--params {args.params} uses family {_FAMILY_OF[args.params]}, not {args.family}")
    try:
        return args.func(args)
    except SizeError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (GraphFormatError, PreconditionError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ARGS


if __name__ == "__main__":
    sys.exit(main())
