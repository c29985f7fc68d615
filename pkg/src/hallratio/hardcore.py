"""Exact hard-core distributions over independent sets of small graphs.

The law at fugacity ``lam`` over a family of independent sets gives each set
``I`` weight ``lam**|I|``.  Families are ``all``, ``maximal`` or ``maximum``;
``lam = math.inf`` is allowed only for ``maximum`` and means the uniform law.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .graph import (
    Graph,
    _bits,
    _check_limit,
    _popcount,
    _to_mask,
    all_independent_masks,
    maximal_independent_masks,
    maximum_independent_masks,
)
from .rational import format_rational

FAMILIES = ("all", "maximal", "maximum")
INF = math.inf

Fugacity = Fraction | float  # float only for math.inf
Law = dict[int, Fraction]  # independent set (bitmask) -> probability


class PreconditionError(ValueError):
    pass


def _check_family(family: str, lam: Fugacity) -> None:
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    if lam == INF:
        if family != "maximum":
            raise ValueError("infinite fugacity is only defined for family=maximum")
    elif not lam > 0:
        raise ValueError("fugacity must be positive")


def family_masks(masks: tuple[int, ...] | list[int], universe: int, family: str) -> list[int]:
    if family == "all":
        return all_independent_masks(masks, universe)
    if family == "maximal":
        return maximal_independent_masks(masks, universe)
    return maximum_independent_masks(masks, universe)[1]


def hardcore_law(masks: tuple[int, ...] | list[int], universe: int, family: str, lam: Fugacity) -> Law:
    """Exact law of the hard-core model on the graph induced by ``universe``."""
    _check_family(family, lam)
    sets = family_masks(masks, universe, family)
    if lam == INF:
        return {s: Fraction(1, len(sets)) for s in sets}
    lam = Fraction(lam)
    weights = {s: lam ** _popcount(s) for s in sets}
    z = sum(weights.values())
    return {s: w / z for s, w in weights.items()}


@dataclass(frozen=True)
class OccupancyReport:
    family: str
    fugacity: Fugacity
    p_in: tuple[Fraction, ...]
    exp_nbr: tuple[Fraction, ...]
    partition: Fraction | None  # None at infinite fugacity; the set count is in `size`
    size: int

    @property
    def expected_size(self) -> Fraction:
        return sum(self.p_in, Fraction(0))

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "lambda": "inf" if self.fugacity == INF else format_rational(self.fugacity),
            "p_in": [format_rational(x) for x in self.p_in],
            "exp_nbr": [format_rational(x) for x in self.exp_nbr],
            "partition": None if self.partition is None else format_rational(self.partition),
            "size": self.size,
        }


def occupancy(h: Graph, family: str, lam: Fugacity, limit: int | None = None) -> OccupancyReport:
    _check_limit(h, limit)
    _check_family(family, lam)
    universe = (1 << h.n) - 1
    law = hardcore_law(h.masks, universe, family, lam)
    p_in = [Fraction(0)] * h.n
    for s, p in law.items():
        for v in _bits(s):
            p_in[v] += p
    exp_nbr = tuple(sum((p_in[u] for u in h.adj[v]), Fraction(0)) for v in range(h.n))
    z = None if lam == INF else sum(Fraction(lam) ** _popcount(s) for s in law)
    return OccupancyReport(family, lam, tuple(p_in), exp_nbr, z, len(law))


def star_occupancy_closed_form(d: int, lam: Fugacity) -> tuple[Fraction, Fraction]:
    """``(P(centre in I), E[#leaves in I])`` for K_{1,d} over all independent sets."""
    if d < 0:
        raise ValueError("d must be non-negative")
    lam = Fraction(lam)
    if lam <= 0:
        raise ValueError("fugacity must be positive")
    z = lam + (1 + lam) ** d
    return lam / z, d * lam * (1 + lam) ** (d - 1) / z if d else Fraction(0)


def verify_local_inequality(
    h: Graph, v: int, a: Fraction, b: Fraction, family: str, lam: Fugacity, limit: int | None = None
) -> tuple[bool, Fraction]:
    """Whether ``a P(v in I) + b E|N(v) & I| >= 1``; returns the left side exactly."""
    if not 0 <= v < h.n:
        raise IndexError(f"vertex {v} out of range for n={h.n}")
    rep = occupancy(h, family, lam, limit)
    lhs = Fraction(a) * rep.p_in[v] + Fraction(b) * rep.exp_nbr[v]
    return lhs >= 1, lhs


# -- spatial Markov property --------------------------------------------------

@dataclass(frozen=True)
class MarkovReport:
    outcomes: int  # number of outside realisations J checked
    discrepancy: Fraction  # max total variation distance over J

    @property
    def ok(self) -> bool:
        return self.discrepancy == 0


def star_violation(h: Graph, x: Iterable[int]) -> int | None:
    """A vertex outside ``x`` with two or more neighbours in ``x``, if any."""
    xm = _to_mask(x)
    for v in range(h.n):
        if not xm >> v & 1 and _popcount(h.masks[v] & xm) > 1:
            return v
    return None


def _neighbourhood(masks: tuple[int, ...], s: int) -> int:
    out = 0
    for v in _bits(s):
        out |= masks[v]
    return out


def second_neighbourhood_in(masks: tuple[int, ...], x: int, u: int) -> int:
    """Vertices ``y`` of ``x`` reached by a path ``u x' y`` with ``u`` in ``u`` and ``x'`` in ``x``."""
    mid = _neighbourhood(masks, u) & x
    return _neighbourhood(masks, mid) & x


def conditioned_region(h: Graph, x: int, j: int, family: str) -> int:
    """Vertex set of the region law predicted for ``I & x`` given ``I - x = j``."""
    masks = h.masks
    nj = _neighbourhood(masks, j)
    w = x & ~nj
    if family == "maximal":
        full = (1 << h.n) - 1
        uncovered = full & ~x & ~(nj | j)
        w &= ~second_neighbourhood_in(masks, x, uncovered)
    return w


def _tv(p: Law, q: Law) -> Fraction:
    keys = set(p) | set(q)
    return sum((abs(p.get(k, Fraction(0)) - q.get(k, Fraction(0))) for k in keys), Fraction(0)) / 2


def verify_spatial_markov(
    h: Graph, x: Iterable[int], family: str, lam: Fugacity, limit: int | None = None
) -> MarkovReport:
    """Compare each conditional law of ``I & X`` with the predicted region law.

    For ``all`` the region is ``X - N(J)``; for ``maximal`` additional
    vertices of ``X`` at distance two (through ``X``) from the uncovered
    outside vertices are removed and the law is over maximal sets.
    """
    _check_limit(h, limit)
    if family not in ("all", "maximal"):
        raise ValueError("spatial Markov check is defined for families all and maximal")
    _check_family(family, lam)
    x = list(x)
    xm = _to_mask(x)
    if family == "maximal":
        bad = star_violation(h, x)
        if bad is not None:
            raise PreconditionError(f"vertex {bad} outside X has at least two neighbours in X")
    law = hardcore_law(h.masks, (1 << h.n) - 1, family, lam)
    by_outside: dict[int, Law] = {}
    for s, p in law.items():
        by_outside.setdefault(s & ~xm, {})[s & xm] = p
    worst = Fraction(0)
    for j, joint in by_outside.items():
        total = sum(joint.values())
        cond = {s: p / total for s, p in joint.items()}
        region = conditioned_region(h, xm, j, family)
        predicted = hardcore_law(h.masks, region, family, lam)
        worst = max(worst, _tv(cond, predicted))
    return MarkovReport(len(by_outside), worst)


# -- numeric facts used in the girth-7 analysis --------------------------------

def fact1_value(lam: float, j: int) -> float:
    """``(1 + 1/lam^(j-1))^(1 + lam^(j-1))``, non-increasing in ``lam``."""
    t = lam ** (j - 1)
    return (1 + 1 / t) ** (1 + t)


FACT1_CAP = Fraction(3125, 1024)
