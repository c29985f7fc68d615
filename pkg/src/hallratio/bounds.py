"""Closed-form bounds on the fractional chromatic number and the Hall ratio.

Exact rationals are returned wherever the formula has a rational closed form.
The two optimisation-based bounds (triangle-free hard-core bound and the
Bollobás lower bound) are floating point and report their tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .graph import Graph, has_cycle_of_length

INF = math.inf


@dataclass(frozen=True)
class BoundResult:
    value: float | Fraction
    k: int | None = None
    lam: float | None = None  # math.inf for the lambda -> infinity limit
    source: str = ""
    exact: bool = False
    tol: float | None = None

    def __post_init__(self):
        if not (self.value > 0) or self.value == INF:
            raise ValueError("bound must be finite and positive")

    def to_json(self) -> dict:
        from .rational import format_decimal, format_rational

        out: dict = {
            "source": self.source,
            "exact": self.exact,
            "value": format_rational(self.value) if self.exact else format_decimal(float(self.value)),
        }
        if self.k is not None:
            out["k"] = self.k
        if self.lam is not None:
            out["lambda"] = "inf" if self.lam == INF else format_decimal(self.lam)
        if self.tol is not None:
            out["tol"] = self.tol
        return out


# -- hard-core bound for triangle-free graphs --------------------------------

def _tf_objective(k: int, lam: float, delta: int) -> float:
    # ((1+l)^k + l(1+l)D) / (l(1+kl)), evaluated in log space for the power
    return (math.exp(k * math.log1p(lam)) + lam * (1 + lam) * delta) / (lam * (1 + k * lam))


def _minimise_log_lambda(k: int, delta: int, tol: float) -> tuple[float, float]:
    """Minimise the k-th objective over lambda > 0; returns (value, lambda)."""
    lo, hi = math.log(1e-4), math.log(1e4)
    grid = [lo + (hi - lo) * i / 63 for i in range(64)]
    vals = [_tf_objective(k, math.exp(t), delta) for t in grid]
    i = min(range(64), key=vals.__getitem__)
    a, b = grid[max(i - 1, 0)], grid[min(i + 1, 63)]
    while b - a > tol:
        m1, m2 = a + (b - a) / 3, b - (b - a) / 3
        if _tf_objective(k, math.exp(m1), delta) <= _tf_objective(k, math.exp(m2), delta):
            b = m2
        else:
            a = m1
    t = (a + b) / 2
    return _tf_objective(k, math.exp(t), delta), math.exp(t)


def triangle_free_chi_f(delta: int, tol: float = 1e-10) -> BoundResult:
    """Upper bound on chi_f of triangle-free graphs of maximum degree ``delta``.

    Minimises ``1 + ((1+l)^k + l(1+l)delta)/(l(1+kl))`` over integer k and
    real l > 0.  The k = 2 branch is taken at its l -> infinity limit
    ``(delta+3)/2``, returned exactly.
    """
    if delta < 1:
        raise ValueError("delta must be at least 1")
    if tol <= 0:
        raise ValueError("tol must be positive")
    best = BoundResult(Fraction(delta + 3, 2), 2, INF, "triangle-free hard-core", exact=True)
    kmax = math.ceil(math.log(delta) ** 2) + 4
    for k in range(3, kmax + 1):
        val, lam = _minimise_log_lambda(k, delta, tol)
        if 1 + val < best.value:
            best = BoundResult(1 + val, k, lam, "triangle-free hard-core", tol=tol)
    return best


def corollary_bound(delta: int) -> float:
    """``1 + (1 + 2/ln D) D / (ln D - 2 ln ln D)``."""
    if delta < 2:
        raise ValueError("delta must be at least 2")
    ln = math.log(delta)
    return 1 + (1 + 2 / ln) * delta / (ln - 2 * math.log(ln))


# -- girth 7 -------------------------------------------------------------------

def girth7_f(x: int, kmax: int = 64, kmin: int = 1) -> tuple[Fraction, int]:
    """``1 + min_k (2x + 2^(k-3))/k`` exactly, with the smallest minimising k."""
    if x < 0:
        raise ValueError("x must be non-negative")
    best, best_k = None, 0
    for k in range(kmin, kmax + 1):
        val = Fraction(2 * x * 8 + 2**k, 8 * k)
        if best is None or val < best:
            best, best_k = val, k
    return 1 + best, best_k


def girth7_k(deg: int, kmin: int = 4) -> int:
    """Smallest k >= kmin minimising the local girth-7 budget of a vertex.

    Unrestricted, the minimiser is k = 1 at degree 0 and ties 3 with 4 at
    degree 1; the local inequality needs k >= 4, which costs nothing once the
    maximum degree is at least 1.
    """
    return girth7_f(deg, kmin=kmin)[1]


# -- Shearer-type lower bounds on the independence number ---------------------

VARIANTS = ("triangle_free", "no_c3_c5")


def shearer_recurrence(d_max: int, variant: str = "triangle_free") -> list[Fraction]:
    """``f(0..d_max)`` with ``f(d) = (1 + (d^2-d) f(d-1)) / (d^2+1)``.

    The triangle-free variant starts from ``f(0) = 1`` and applies the
    recurrence from d = 1.  The variant without 3- and 5-cycles uses
    ``f(0) = 0`` and ``f(1) = 4/7``.
    """
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    if d_max < 0:
        raise ValueError("d_max must be non-negative")
    if variant == "triangle_free":
        f, start = [Fraction(1)], 1
    else:
        f, start = [Fraction(0), Fraction(4, 7)], 2
    for d in range(start, d_max + 1):
        f.append((1 + (d * d - d) * f[d - 1]) / (d * d + 1))
    return f[: d_max + 1]


def shearer_table(d_max: int = 10) -> list[tuple[int, Fraction, Fraction]]:
    """Rows ``(d, 1/f_tf(d), 1/f_c3c5(d))`` for d = 2..d_max."""
    a = shearer_recurrence(d_max, "triangle_free")
    b = shearer_recurrence(d_max, "no_c3_c5")
    return [(d, 1 / a[d], 1 / b[d]) for d in range(2, d_max + 1)]


def shearer_graph_lower_bound(g: Graph, variant: str = "triangle_free") -> Fraction:
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    if has_cycle_of_length(g, 3):
        raise ValueError("graph contains a 3-cycle")
    if variant == "no_c3_c5" and has_cycle_of_length(g, 5):
        raise ValueError("graph contains a 5-cycle")
    f = shearer_recurrence(max(g.max_degree, 1), variant)
    total = sum((f[g.degree(v)] for v in range(g.n)), Fraction(0))
    if variant == "no_c3_c5":
        n11 = sum(1 for u, v in g.edges() if g.degree(u) == 1 and g.degree(v) == 1)
        total -= Fraction(n11, 7)
    return total


# -- Bollobás lower bound on the Hall ratio of high-girth regular graphs -------

def bollobas_gap(a: float, d: int) -> float:
    """LHS minus RHS of the Bollobás inequality; negative means it holds."""
    return (
        a * (d * math.log(2) - math.log(a))
        + (2 - a) * (d - 1) * math.log(2 - a)
        + (a - 1) * d * math.log(1 - a)
        - 2 * (d - 1) * math.log(2)
    )


def bollobas_threshold(d: int, tol: float = 1e-12) -> float:
    """Smallest alpha in (0,1) above which the inequality holds, by bisection."""
    if d < 3:
        raise ValueError("d must be at least 3")
    # the gap is positive near 0 and tends to -(d-1) ln 2 < 0 as alpha -> 1;
    # locate the last sign change on a grid, then bisect
    grid = [i / 1000 for i in range(1, 1000)]
    signs = [bollobas_gap(a, d) < 0 for a in grid]
    if not signs[-1]:
        raise ArithmeticError("no sign change of the Bollobás gap on (0,1)")
    j = len(grid) - 1
    while j > 0 and signs[j - 1]:
        j -= 1
    if j == 0:
        raise ArithmeticError("Bollobás gap has no positive region on (0,1)")
    lo, hi = grid[j - 1], grid[j]
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if bollobas_gap(mid, d) < 0:
            hi = mid
        else:
            lo = mid
    return hi


def bollobas_lower(d: int, tol: float = 1e-12) -> float:
    """Lower bound ``2/alpha*`` on the Hall ratio of d-regular graphs of large girth.

    For d = 2 the value is the limit 2 (long odd cycles).
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if d == 2:
        return 2.0
    return 2 / bollobas_threshold(d, tol)


# -- the four printed tables as data rows --------------------------------------

TABLE3_DELTAS: Sequence[int] = (17, 18, 19, 20, 50, 100, 200, 500, 1000)


def triangle_free_table(deltas: Sequence[int] = TABLE3_DELTAS) -> list[BoundResult]:
    return [triangle_free_chi_f(x) for x in deltas]

