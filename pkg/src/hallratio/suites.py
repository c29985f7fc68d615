"""Verification suites shared by the CLI ``verify`` command and the tests.

Each suite returns a :class:`SuiteReport` listing the checks it ran and any
counterexamples; nothing here raises on a failed check.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .bounds import girth7_f
from .catalog import ENTRIES
from .corpus import girth7_corpus, markov_corpus
from .graph import _to_mask, complete, star
from .greedy import (
    HypothesisError,
    build_lembest,
    clique_params,
    coefficients_girth7,
    coefficients_triangle_free,
    girth7_params,
    greedy_fractional,
    verify_fractional_colouring,
)
from .hardcore import (
    hardcore_law,
    occupancy,
    star_occupancy_closed_form,
    verify_spatial_markov,
)

FUGACITIES = (Fraction(1, 2), Fraction(1), Fraction(2), Fraction(4))


@dataclass
class SuiteReport:
    name: str
    checks: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def expect(self, cond: bool, message: str) -> None:
        self.checks += 1
        if not cond:
            self.failures.append(message)

    def to_json(self) -> dict:
        return {"suite": self.name, "checks": self.checks, "ok": self.ok, "failures": self.failures}


def catalog_suite() -> SuiteReport:
    rep = SuiteReport("catalog")
    for e in ENTRIES.values():
        problems = e.check()
        rep.expect(not problems, "; ".join(problems))
    return rep


def greedy_suite(corpus_size: int = 12) -> SuiteReport:
    rep = SuiteReport("greedy")
    for d in range(1, 6):
        g = build_lembest(d)
        fc = greedy_fractional(g, clique_params(g))
        check = verify_fractional_colouring(g, fc)
        rep.expect(check.ok and fc.total == Fraction(d + 3, 2), f"lembest({d}): total {fc.total}, {check.violations}")
    for i, g in enumerate(girth7_corpus(corpus_size)):
        params = girth7_params(g)
        bound, _ = girth7_f(g.max_degree)
        try:
            fc = greedy_fractional(g, params)
        except HypothesisError as exc:
            rep.expect(False, f"girth-7 graph {i}: {exc}")
            continue
        check = verify_fractional_colouring(g, fc, params.local_budget(g))
        rep.expect(check.ok, f"girth-7 graph {i}: {check.violations}")
        rep.expect(fc.total <= bound, f"girth-7 graph {i}: total {fc.total} exceeds f(Delta) = {bound}")
    return rep


def markov_suite(count: int = 50, lam: Fraction = Fraction(4)) -> SuiteReport:
    rep = SuiteReport("markov")
    for family, star_cond in (("all", False), ("maximal", True)):
        for i, (g, x) in enumerate(markov_corpus(count, seed=11 if family == "all" else 13, star=star_cond)):
            m = verify_spatial_markov(g, x, family, lam)
            rep.expect(m.ok, f"{family} instance {i}: discrepancy {m.discrepancy}")
    return rep


def star_closed_form_suite(rep: SuiteReport) -> None:
    for d in range(7):
        for lam in FUGACITIES:
            occ = occupancy(star(d), "all", lam)
            rep.expect(
                star_occupancy_closed_form(d, lam) == (occ.p_in[0], occ.exp_nbr[0]),
                f"star K1,{d} at lambda {lam}: closed form differs from enumeration",
            )


def triangle_free_star_suite(rep: SuiteReport, ks=range(2, 7), js=range(11)) -> None:
    """On stars the inequality holds with equality exactly at ``j = k - 1`` and ``j = k``."""
    for k in ks:
        for lam in FUGACITIES:
            a, b = coefficients_triangle_free(k, lam)
            tight = []
            for j in js:
                occ = occupancy(star(j), "all", lam)
                lhs = a * occ.p_in[0] + b * occ.exp_nbr[0]
                rep.expect(lhs >= 1, f"k={k}, lambda={lam}, star {j}: lhs {lhs} < 1")
                if lhs == 1:
                    tight.append(j)
            rep.expect(tight == [k - 1, k], f"k={k}, lambda={lam}: equality at {tight}")


def girth7_vertex_suite(rep: SuiteReport, corpus_size: int = 12, subgraphs: int = 3, seed: int = 5) -> None:
    """The girth-7 inequality at every vertex of every corpus graph and of random induced subgraphs."""
    rng = random.Random(seed)
    lam = Fraction(4)
    for i, g in enumerate(girth7_corpus(corpus_size)):
        regions = [(1 << g.n) - 1]
        for _ in range(subgraphs):
            regions.append(_to_mask(v for v in range(g.n) if rng.random() < 0.7) or 1)
        for region in regions:
            law = hardcore_law(g.masks, region, "maximal", lam)
            p = [Fraction(0)] * g.n
            for s, q in law.items():
                for v in range(g.n):
                    if s >> v & 1:
                        p[v] += q
            for v in range(g.n):
                if not region >> v & 1:
                    continue
                nbr = sum((p[u] for u in g.adj[v] if region >> u & 1), Fraction(0))
                for k in range(4, 9):
                    a, b = coefficients_girth7(k)
                    rep.expect(a * p[v] + b * nbr >= 1, f"graph {i}, region {region:#x}, vertex {v}, k={k}")


def clique_relation_suite(rep: SuiteReport) -> None:
    for n in range(1, 7):
        occ = occupancy(complete(n), "maximum", float("inf"))
        lhs = Fraction(n + 1, 2) * occ.p_in[0] + Fraction(1, 2) * occ.exp_nbr[0]
        rep.expect(lhs == 1, f"K{n}: lhs {lhs}")


def assertions_suite() -> SuiteReport:
    rep = SuiteReport("assertions")
    star_closed_form_suite(rep)
    clique_relation_suite(rep)
    triangle_free_star_suite(rep)
    girth7_vertex_suite(rep)
    return rep


SUITES = {
    "catalog": catalog_suite,
    "greedy": greedy_suite,
    "markov": markov_suite,
    "assertions": assertions_suite,
}
