"""End-to-end Hall ratio bounds: patterns, constraints, pruning, exact LP.

:func:`hall_ratio` picks the family of patterns a girth bound allows and the
cheapest engine that covers it:

``tree-states``
    acyclic family, constraints listed from subtree states;
``tree-cuts``
    acyclic vertex-rooted family too large to list, cutting planes;
``bipartite-cores``
    edge-rooted depth-2 patterns of girth 6 (compiled enumerator);
``nauty-cores``
    any other cyclic family of depth at most 2.

An edge-rooted family of depth ``r >= 3`` with girth exactly ``2r + 2`` still
admits cycles, which no engine here enumerates.  The acyclic optimum is then
returned with ``certified = False``.
"""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from .bipartite_layer import MAX_DEGREE as BIPARTITE_MAX_DEGREE
from .bipartite_layer import girth6_edge_tallies
from .constraints import Constraint, prune
from .girth_patterns import core_patterns, enumerate_cores, forces_trees
from .graph import SizeError
from .lp import LinearProgram, LPSolution, check_certificate, solve_min
from .patterns import DEFAULT_BUDGET, pattern_tally
from .rational import format_rational
from .tree_lp import DEFAULT_EXACT_LIMIT, build_tree_lp, root_count, solve_vertex_by_cuts, tree_constraints


@dataclass(frozen=True)
class PipelineConfig:
    prune_mode: str = "weaker"
    collapse: bool = True
    budget: int = DEFAULT_BUDGET
    core_budget: int = 200_000
    exact_limit: int = DEFAULT_EXACT_LIMIT
    workers: int = 1
    log: Callable[[str], None] | None = field(default=None, compare=False)


@dataclass(frozen=True)
class HallRatioResult:
    d: int
    g: float
    r: int
    rooting: str
    value: Fraction
    alpha: tuple[Fraction, ...]
    method: str
    certified: bool
    patterns: int
    constraints: int
    kept: int
    prune_mode: str
    non_increasing: bool
    self_check: tuple[str, ...]
    seconds: float
    note: str = ""

    @property
    def pruned(self) -> int:
        return self.constraints - self.kept

    @property
    def ok(self) -> bool:
        return not self.self_check

    def to_json(self, timing: bool = False) -> dict:
        """JSON form; wall-clock time is left out unless asked for, so output is reproducible."""
        out = asdict(self)
        out["g"] = "inf" if self.g == float("inf") else int(self.g)
        out["value"] = format_rational(self.value)
        out["value_decimal"] = f"{float(self.value):.6f}"
        out["alpha"] = [format_rational(x) for x in self.alpha]
        out["pruned"] = self.pruned
        out["self_check"] = list(self.self_check)
        if timing:
            out["seconds"] = round(self.seconds, 3)
        else:
            del out["seconds"]
        return out


def check_rows(alpha, rows: Iterable[Constraint]) -> list[str]:
    """Rows with ``alpha . e < 1``, reported by index."""
    bad = []
    for j, c in enumerate(rows):
        if sum((a * x for a, x in zip(alpha, c.e)), Fraction(0)) < 1:
            bad.append(f"constraint {j} {[format_rational(x) for x in c.e]} violated")
            if len(bad) >= 10:
                break
    return bad


def solve_family(
    cs: list[Constraint], d: int, r: int, rooting: str, prune_mode: str
) -> tuple[LinearProgram, LPSolution, int, str]:
    """Prune, solve, and fall back to plain pruning if relative pruning was unsound.

    Returns the LP actually solved, its solution, the number of kept rows and
    the pruning mode that produced them.
    """
    kept = prune(cs, prune_mode)
    lp = build_tree_lp(kept, d, r, rooting)
    sol = solve_min(lp)
    if prune_mode == "relative" and not sol.non_increasing:
        kept = prune(cs, "weaker")
        lp = build_tree_lp(kept, d, r, rooting)
        sol = solve_min(lp)
        prune_mode = "weaker"
    return lp, sol, len(kept), prune_mode


def cyclic_constraints(
    d: int, g: int, r: int, rooting: str, config: PipelineConfig
) -> tuple[list[Constraint], int, str]:
    """Distinct constraints of a cyclic family of depth at most 2, the pattern count and the engine."""
    if rooting == "edge" and r == 2 and g == 6:
        if d > BIPARTITE_MAX_DEGREE:
            raise SizeError(f"edge-rooted girth-6 patterns are enumerated for d <= {BIPARTITE_MAX_DEGREE}")
        fam = girth6_edge_tallies(d, workers=config.workers, log=config.log)
        tallies = [((s0, s1, s2), n) for (s0, s1, s2), n in fam.tallies]
        method, count = "bipartite-cores", fam.patterns
    else:
        tallies_set = set()
        count = 0
        for core in enumerate_cores(d, g, r, rooting, config.core_budget, config.log):
            for p in core_patterns(core, d, r, config.collapse):
                tallies_set.add(pattern_tally(p))
                count += 1
                if count > config.budget:
                    raise SizeError(f"more than {config.budget} patterns (count so far {count})")
        tallies = list(tallies_set)
        method = "nauty-cores"
    seen: dict[tuple[Fraction, ...], Constraint] = {}
    for t in tallies:
        c = Constraint.from_tally(t)
        if c.e not in seen or c.n < seen[c.e].n:
            seen[c.e] = c
    return [seen[e] for e in sorted(seen)], count, method


def hall_ratio(d: int, g: float, r: int, rooting: str, config: PipelineConfig | None = None) -> HallRatioResult:
    """Upper bound on the Hall ratio of d-regular graphs of girth at least ``g``."""
    config = config or PipelineConfig()
    if rooting not in ("vertex", "edge"):
        raise ValueError(f"unknown rooting {rooting!r}")
    if d < 2 or r < 1:
        raise ValueError("need d >= 2 and r >= 1")
    if g < 4:
        raise ValueError("girth must be at least 4")
    start = time.perf_counter()
    note = ""
    certified = True
    acyclic = forces_trees(g, r, rooting)
    if not acyclic and r >= 3:
        if rooting == "edge" and g == 2 * r + 2:
            acyclic, certified = True, False
            note = f"cycles of length {g} fit in depth {r}; value is the acyclic optimum only"
        else:
            raise SizeError(f"cyclic patterns of depth {r} are not enumerated")

    if acyclic:
        patterns = root_count(d, r, rooting, config.collapse)
        if patterns > config.exact_limit:
            if rooting != "vertex":
                raise SizeError(f"{patterns} edge-rooted root pairs exceed the exact limit {config.exact_limit}")
            cut = solve_vertex_by_cuts(d, r, config.collapse, log=config.log)
            sol = cut.solution
            problems = check_certificate(cut.lp, sol)
            return HallRatioResult(
                d, g, r, rooting, sol.value, sol.alpha, "tree-cuts", certified,
                patterns, patterns, len(cut.rows), "weaker", sol.non_increasing,
                tuple(problems), time.perf_counter() - start,
                note or f"all {cut.screened} root multisets screened in {cut.rounds} rounds",
            )
        cs = tree_constraints(d, r, rooting, config.collapse, config.exact_limit)
        method = "tree-states"
    else:
        cs, patterns, method = cyclic_constraints(d, int(g), r, rooting, config)

    lp, sol, kept, mode = solve_family(cs, d, r, rooting, config.prune_mode)
    problems = check_certificate(lp, sol) + check_rows(sol.alpha, cs)
    return HallRatioResult(
        d, g, r, rooting, sol.value, sol.alpha, method, certified, patterns, len(cs), kept,
        mode, sol.non_increasing, tuple(problems), time.perf_counter() - start, note,
    )
