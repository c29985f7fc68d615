"""Constraint vectors (expected layer occupancies of a uniform maximum
independent set) and the algebra used to combine them.

A :class:`Constraint` holds exact rationals.  The hot loops work instead on
*tallies* ``(S, n)`` where ``S = n * e`` is an integer vector: the number of
maximum independent sets ``n`` and, per layer, the total number of layer
vertices summed over those sets.  Both operations stay integral on tallies.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

import numpy as np

from .rational import format_rational, parse_rational

Tally = tuple[tuple[int, ...], int]


@dataclass(frozen=True)
class Constraint:
    e: tuple[Fraction, ...]
    n: int

    def __post_init__(self):
        if any(x < 0 for x in self.e):
            raise ValueError("constraint entries must be non-negative")
        if self.n < 0:
            raise ValueError("cardinality must be non-negative")

    @property
    def norm(self) -> Fraction:
        return sum(self.e, Fraction(0))

    def __len__(self) -> int:
        return len(self.e)

    @classmethod
    def of(cls, e: Iterable, n: int) -> Constraint:
        return cls(tuple(Fraction(x) for x in e), n)

    @classmethod
    def from_tally(cls, tally: Tally) -> Constraint:
        s, n = tally
        if n == 0:
            return cls(tuple(Fraction(0) for _ in s), 0)
        return cls(tuple(Fraction(x, n) for x in s), n)

    def tally(self) -> Tally:
        if self.n == 0:
            return tuple(0 for _ in self.e), 0
        s = tuple(x * self.n for x in self.e)
        if any(x.denominator != 1 for x in s):
            raise ValueError("constraint is not the average of integer layer counts")
        return tuple(int(x) for x in s), self.n

    def to_json(self) -> dict:
        return {"e": [format_rational(x) for x in self.e], "n": self.n}

    @classmethod
    def from_json(cls, data: dict) -> Constraint:
        return cls(tuple(parse_rational(x) for x in data["e"]), int(data["n"]))


def _same_length(c: Constraint, c2: Constraint) -> None:
    if len(c.e) != len(c2.e):
        raise ValueError(f"length mismatch: {len(c.e)} vs {len(c2.e)}")


def join(c: Constraint, c2: Constraint) -> Constraint:
    """The larger-norm constraint, or the count-weighted average on a tie."""
    _same_length(c, c2)
    if c.n == 0:
        return c2
    if c2.n == 0:
        return c
    a, b = c.norm, c2.norm
    if a > b:
        return c
    if a < b:
        return c2
    total = c.n + c2.n
    return Constraint(
        tuple((c.n * x + c2.n * y) / total for x, y in zip(c.e, c2.e)), total
    )


def plus(c: Constraint, c2: Constraint) -> Constraint:
    _same_length(c, c2)
    return Constraint(tuple(x + y for x, y in zip(c.e, c2.e)), c.n * c2.n)


# -- tallies ------------------------------------------------------------

def _pad(s: tuple[int, ...], length: int) -> tuple[int, ...]:
    return s + (0,) * (length - len(s))


def tally_plus(a: Tally, b: Tally) -> Tally:
    (sa, na), (sb, nb) = a, b
    length = max(len(sa), len(sb))
    sa, sb = _pad(sa, length), _pad(sb, length)
    return tuple(x * nb + y * na for x, y in zip(sa, sb)), na * nb


def tally_join(a: Tally, b: Tally) -> Tally:
    (sa, na), (sb, nb) = a, b
    if na == 0:
        return b
    if nb == 0:
        return a
    # compare sum(sa)/na with sum(sb)/nb
    lhs, rhs = sum(sa) * nb, sum(sb) * na
    if lhs > rhs:
        return a
    if lhs < rhs:
        return b
    length = max(len(sa), len(sb))
    sa, sb = _pad(sa, length), _pad(sb, length)
    return tuple(x + y for x, y in zip(sa, sb)), na + nb


def tally_norm(a: Tally) -> int:
    s, n = a
    return sum(s) // n


def tally_key(a: Tally) -> tuple[int, ...]:
    """Canonical key of the averaged vector ``S / n`` (ignores ``n`` itself)."""
    s, n = a
    g = n
    for x in s:
        g = gcd(g, x)
    return tuple(x // g for x in s) + (n // g,)


# -- pruning ------------------------------------------------------------

def _prefix(e: Sequence[Fraction]) -> tuple[Fraction, ...]:
    out, acc = [], Fraction(0)
    for x in e:
        acc += x
        out.append(acc)
    return tuple(out)


def prune(cs: Sequence[Constraint], mode: str = "weaker") -> list[Constraint]:
    """Drop duplicates and constraints implied by a kept one.

    ``weaker`` drops ``e`` when some kept ``e'`` satisfies ``e >= e'``
    entrywise, which is sound for every non-negative coefficient vector.
    ``relative`` compares prefix sums instead and is only sound for
    non-increasing coefficient vectors; callers must check that.
    """
    if mode not in ("weaker", "relative"):
        raise ValueError(f"unknown prune mode {mode!r}")
    if not cs:
        return []
    length = len(cs[0].e)
    if any(len(c.e) != length for c in cs):
        raise ValueError("constraints of unequal length")

    by_e: dict[tuple[Fraction, ...], Constraint] = {}
    for c in cs:
        prev = by_e.get(c.e)
        if prev is None or c.n < prev.n:
            by_e[c.e] = c
    view = (lambda e: e) if mode == "weaker" else _prefix
    order = sorted(by_e, key=lambda e: (sum(e), view(e)))

    kept: list[Constraint] = []
    kept_exact: list[tuple[Fraction, ...]] = []
    buf = np.empty((64, length))
    for e in order:
        v = view(e)
        vf = np.array([float(x) for x in v])
        k = len(kept)
        if k:
            hits = np.nonzero((buf[:k] <= vf + 1e-9).all(axis=1))[0]
            if any(all(a <= x for a, x in zip(kept_exact[i], v)) for i in hits):
                continue
        if k == len(buf):
            buf = np.concatenate([buf, np.empty_like(buf)])
        buf[k] = vf
        kept.append(by_e[e])
        kept_exact.append(v)
    return kept
