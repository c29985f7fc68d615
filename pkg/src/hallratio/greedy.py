"""The greedy fractional colouring algorithm driven by a hard-core law.

Each round draws the law of a random independent set of the current induced
subgraph ``H``, adds weight proportional to it, and removes the vertices whose
coverage reached 1.  The per-vertex hypothesis
``alpha_v P(v in I_H) + beta_v E|N(v) & I_H| >= 1`` is checked every round,
which is what guarantees the final weight stays within
``max_v alpha_v + beta_v deg_G(v)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .bounds import girth7_k
from .graph import Graph, _bits, _check_limit, _to_mask, clique_number_at
from .hardcore import INF, Fugacity, _check_family, hardcore_law
from .rational import format_rational


class HypothesisError(ArithmeticError):
    """The local occupancy hypothesis failed at a live vertex."""

    def __init__(self, vertex: int, lhs: Fraction, round_: int):
        super().__init__(f"hypothesis fails at vertex {vertex} in round {round_}: lhs = {lhs}")
        self.vertex, self.lhs, self.round = vertex, lhs, round_


class NonTermination(RuntimeError):
    pass


# -- coefficients ---------------------------------------------------------------

def coefficients_triangle_free(k: int, lam: Fugacity) -> tuple[Fraction, Fraction]:
    """``(1 + (1+l)^k / (l(1+kl)), (1+l)/(1+kl))``; ``lam = inf`` gives the limit."""
    if k < 1:
        raise ValueError("k must be positive")
    if lam == INF:
        # (1+l)^k / (l(1+kl)) -> 0 for k = 1, 1/2 for k = 2 and diverges beyond
        if k > 2:
            raise ValueError("coefficients diverge as lambda -> infinity for k > 2")
        return (Fraction(1) if k == 1 else Fraction(3, 2)), Fraction(1, k)
    lam = Fraction(lam)
    if lam <= 0:
        raise ValueError("fugacity must be positive")
    return 1 + (1 + lam) ** k / (lam * (1 + k * lam)), (1 + lam) / (1 + k * lam)


def coefficients_girth7(k: int) -> tuple[Fraction, Fraction]:
    if k < 4:
        raise ValueError("k must be at least 4")
    return Fraction(2 ** (k - 3) + k, k), Fraction(2, k)


def coefficients_clique(omega: int) -> tuple[Fraction, Fraction]:
    """``((omega+1)/2, 1/2)``, valid for the uniform law on maximum sets."""
    return Fraction(omega + 1, 2), Fraction(1, 2)


# -- parameters and colourings -------------------------------------------------

@dataclass(frozen=True)
class GreedyParams:
    family: str
    lam: Fugacity
    alpha_of: tuple[Fraction, ...]
    beta_of: tuple[Fraction, ...]

    def __post_init__(self):
        _check_family(self.family, self.lam)
        if len(self.alpha_of) != len(self.beta_of):
            raise ValueError("alpha and beta must have the same length")
        if any(a < 0 for a in self.alpha_of) or any(b < 0 for b in self.beta_of):
            raise ValueError("coefficients must be non-negative")

    def budget(self, g: Graph) -> Fraction:
        return max(
            (self.alpha_of[v] + self.beta_of[v] * g.degree(v) for v in range(g.n)),
            default=Fraction(0),
        )

    def local_budget(self, g: Graph) -> tuple[Fraction, ...]:
        return tuple(self.alpha_of[v] + self.beta_of[v] * g.degree(v) for v in range(g.n))


def clique_params(g: Graph) -> GreedyParams:
    """Uniform law on maximum sets with ``((omega(v)+1)/2, 1/2)``."""
    coeffs = [coefficients_clique(clique_number_at(g, v)) for v in range(g.n)]
    return GreedyParams("maximum", INF, tuple(a for a, _ in coeffs), tuple(b for _, b in coeffs))


def triangle_free_params(g: Graph, k: int, lam: Fugacity) -> GreedyParams:
    a, b = coefficients_triangle_free(k, lam)
    return GreedyParams("all", lam, (a,) * g.n, (b,) * g.n)


def girth7_params(g: Graph, lam: Fugacity = Fraction(4)) -> GreedyParams:
    """Maximal-set law with per-vertex k chosen to minimise the local budget."""
    coeffs = [coefficients_girth7(girth7_k(g.degree(v))) for v in range(g.n)]
    return GreedyParams("maximal", lam, tuple(a for a, _ in coeffs), tuple(b for _, b in coeffs))


@dataclass
class FractionalColouring:
    n: int
    classes: dict[frozenset, Fraction] = field(default_factory=dict)
    rounds: int = 0

    @property
    def total(self) -> Fraction:
        return sum(self.classes.values(), Fraction(0))

    def coverage(self) -> list[Fraction]:
        w = [Fraction(0)] * self.n
        for s, x in self.classes.items():
            for v in s:
                w[v] += x
        return w

    def add(self, s: frozenset, x: Fraction) -> None:
        if x:
            self.classes[s] = self.classes.get(s, Fraction(0)) + x

    def to_json(self) -> dict:
        items = sorted(self.classes.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))
        return {
            "classes": [{"set": sorted(s), "weight": format_rational(x)} for s, x in items],
            "total": format_rational(self.total),
            "coverage": [format_rational(x) for x in self.coverage()],
        }


# -- the algorithm ----------------------------------------------------------------

def greedy_fractional(
    g: Graph,
    params: GreedyParams,
    check: bool = True,
    limit: int | None = None,
    max_rounds: int | None = None,
) -> FractionalColouring:
    """Run the greedy fractional algorithm to completion.

    With ``check`` the hypothesis is verified at every live vertex in every
    round and a :class:`HypothesisError` is raised on the first failure.
    A vertex with zero probability of being drawn imposes no limit on the
    round's increment.
    """
    _check_limit(g, limit)
    if len(params.alpha_of) != g.n:
        raise ValueError("parameters do not match the graph order")
    budget = params.budget(g)
    max_rounds = g.n + 1 if max_rounds is None else max_rounds
    fc = FractionalColouring(g.n)
    w = [Fraction(0)] * g.n
    live = (1 << g.n) - 1
    spent = Fraction(0)
    while live:
        if fc.rounds >= max_rounds:
            raise NonTermination(f"no termination after {fc.rounds} rounds")
        law = hardcore_law(g.masks, live, params.family, params.lam)
        p = [Fraction(0)] * g.n
        for s, q in law.items():
            for v in _bits(s):
                p[v] += q
        if check:
            for v in _bits(live):
                lhs = params.alpha_of[v] * p[v] + params.beta_of[v] * sum(
                    (p[u] for u in g.adj[v] if live >> u & 1), Fraction(0)
                )
                if lhs < 1:
                    raise HypothesisError(v, lhs, fc.rounds)
        steps = [(1 - w[v]) / p[v] for v in _bits(live) if p[v] > 0]
        if not steps:
            raise NonTermination("no live vertex can be covered")
        iota = min(min(steps), budget - spent)
        if iota <= 0:
            raise NonTermination(f"weight budget {budget} exhausted with vertices left")
        for s, q in law.items():
            fc.add(frozenset(_bits(s)), q * iota)
        spent += iota
        for v in _bits(live):
            w[v] += p[v] * iota
            if w[v] >= 1:
                live &= ~(1 << v)
        fc.rounds += 1
    return fc


# -- worst-case graphs for maximum-set laws -------------------------------------

def build_lembest(d: int) -> Graph:
    """K2 for d = 1, C5 for d = 2, then two pendant vertices added to every vertex."""
    if d < 1:
        raise ValueError("d must be positive")
    if d % 2:
        n, edges = 2, [(0, 1)]
    else:
        n, edges = 5, [(i, (i + 1) % 5) for i in range(5)]
    for _ in range((d - 1) // 2):
        base = n
        for v in range(base):
            edges += [(v, n), (v, n + 1)]
            n += 2
    return Graph.from_edges(n, edges)


# -- validation -------------------------------------------------------------------

@dataclass(frozen=True)
class ColouringReport:
    violations: tuple[str, ...]
    total: Fraction

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_fractional_colouring(
    g: Graph,
    fc: FractionalColouring,
    local_budget: Fraction | Sequence[Fraction] | Mapping[int, Fraction] | None = None,
    subgraphs: Iterable[Iterable[int]] = (),
) -> ColouringReport:
    """Check independence, coverage, the total, and restriction weights.

    ``local_budget`` is either a single bound on the total or a per-vertex
    bound; for each vertex set in ``subgraphs`` the weight of the classes
    meeting it must not exceed the largest budget over its vertices.
    """
    bad: list[str] = []
    for s, x in fc.classes.items():
        if x < 0:
            bad.append(f"negative weight {x} on {sorted(s)}")
        if x > 0 and not g.is_independent(s):
            bad.append(f"class {sorted(s)} is not independent")
    for v, c in enumerate(fc.coverage()):
        if c < 1:
            bad.append(f"vertex {v} covered only {c}")
    total = fc.total
    if local_budget is not None:
        if isinstance(local_budget, (int, Fraction)):
            per = [Fraction(local_budget)] * g.n
        else:
            per = [Fraction(local_budget[v]) for v in range(g.n)]
        if g.n and total > max(per):
            bad.append(f"total {total} exceeds budget {max(per)}")
        for h in subgraphs:
            hm = _to_mask(h)
            if not hm:
                continue
            weight = sum((x for s, x in fc.classes.items() if _to_mask(s) & hm), Fraction(0))
            cap = max(per[v] for v in _bits(hm))
            if weight > cap:
                bad.append(f"restriction to {sorted(_bits(hm))} has weight {weight} > {cap}")
    return ColouringReport(tuple(bad), total)
