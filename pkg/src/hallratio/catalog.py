"""Named small extremal graphs with their expected statistics.

Every entry is rebuilt from its construction parameters and checked against
order, regular degree, girth, independence number and the ratio n/alpha.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .graph import Graph, girth, independence_number


def circulant(n: int, gens: Sequence[int]) -> Graph:
    edges = {(min(i, (i + s) % n), max(i, (i + s) % n)) for i in range(n) for s in gens}
    return Graph.from_edges(n, sorted(edges))


def generalized_petersen(n: int, k: int) -> Graph:
    edges = []
    for i in range(n):
        edges += [(i, (i + 1) % n), (i, i + n), (n + i, n + (i + k) % n)]
    return Graph.from_edges(2 * n, edges)


def cycle_with_chords(n: int, chords: Sequence[tuple[int, int]]) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)] + list(chords))


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    kind: str  # circulant | generalized_petersen | cycle_with_chords
    params: tuple
    order: int
    degree: int
    girth: int
    alpha: int

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.order, self.alpha)

    def build(self) -> Graph:
        if self.kind == "circulant":
            return circulant(*self.params)
        if self.kind == "generalized_petersen":
            return generalized_petersen(*self.params)
        return cycle_with_chords(*self.params)

    def check(self) -> list[str]:
        """Mismatches between the built graph and the recorded statistics."""
        g = self.build()
        out = []
        got = {
            "order": g.n,
            "degree": g.max_degree if g.is_regular() else -1,
            "girth": girth(g),
            "alpha": independence_number(g),
        }
        for key, val in got.items():
            if val != getattr(self, key):
                out.append(f"{self.name}: {key} is {val}, expected {getattr(self, key)}")
        return out


_LOCKE_CHORDS = ((0, 7), (1, 5), (2, 12), (3, 8), (4, 10), (6, 11), (9, 13))

ENTRIES: dict[str, CatalogEntry] = {
    e.name: e
    for e in (
        CatalogEntry("fajtlowicz", "generalized_petersen", (7, 2), 14, 3, 5, 5),
        CatalogEntry("locke", "cycle_with_chords", (14, _LOCKE_CHORDS), 14, 3, 5, 5),
        CatalogEntry("jones13", "circulant", (13, (1, -1, 5, -5)), 13, 4, 4, 4),
        CatalogEntry("circ20", "circulant", (20, (1, -1, 6, -6, 10)), 20, 5, 4, 6),
        CatalogEntry("circ29", "circulant", (29, (1, -1, 5, -5, 13, -13)), 29, 6, 4, 8),
        CatalogEntry("petersen", "generalized_petersen", (5, 2), 10, 3, 5, 4),
    )
}

ALIASES = {"gp72": "fajtlowicz", "gp52": "petersen"}


def entry(name: str) -> CatalogEntry:
    key = ALIASES.get(name, name)
    if key not in ENTRIES:
        raise KeyError(f"unknown catalog graph {name!r}; known: {', '.join(sorted(ENTRIES))}")
    return ENTRIES[key]


def catalog(name: str) -> Graph:
    return entry(name).build()
