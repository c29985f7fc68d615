"""Rooted patterns, tree enumeration and per-pattern constraints.

A pattern is a graph together with a root (one vertex, or the two ends of an
edge) in which every vertex lies within distance ``depth`` of the root.
Rooted trees are handled through canonical codes: the code of a vertex is
the sorted tuple of its children's codes, so a leaf is ``()``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations_with_replacement
from typing import Iterator, Sequence

from .constraints import Constraint, Tally, tally_join, tally_plus
from .graph import (
    DEFAULT_LIMIT,
    Graph,
    SizeError,
    distances_from,
    maximum_independent_masks,
    maximum_independent_tally,
)

TreeCode = tuple
DEFAULT_BUDGET = 2_000_000


@dataclass(frozen=True)
class Pattern:
    graph: Graph
    root: tuple[int, ...]
    depth: int

    def __post_init__(self):
        if len(self.root) not in (1, 2):
            raise ValueError("root must be one vertex or one edge")
        if len(self.root) == 2 and self.root[1] not in self.graph.adj[self.root[0]]:
            raise ValueError(f"root pair {self.root} is not an edge")
        if self.depth < 0:
            raise ValueError("depth must be non-negative")
        far = [v for v, x in enumerate(self.distances) if x > self.depth]
        if far:
            raise ValueError(f"vertex {far[0]} lies farther than depth {self.depth} from the root")

    @property
    def rooting(self) -> str:
        return "vertex" if len(self.root) == 1 else "edge"

    @cached_property
    def distances(self) -> tuple[int, ...]:
        return tuple(distances_from(self.graph, self.root))

    @cached_property
    def layers(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in range(self.depth + 1)]
        for v, x in enumerate(self.distances):
            out[int(x)].append(v)
        return tuple(tuple(layer) for layer in out)

    def is_regular_pattern(self, d: int) -> bool:
        """Degree exactly ``d`` above the two deepest layers, at most ``d`` in them."""
        for v, x in enumerate(self.distances):
            deg = self.graph.degree(v)
            if deg > d or (x < self.depth - 1 and deg != d):
                return False
        return True

    def to_json(self) -> dict:
        return {
            "n": self.graph.n,
            "edges": [list(e) for e in self.graph.edges()],
            "root": list(self.root),
            "depth": self.depth,
        }

    @classmethod
    def from_json(cls, data: dict) -> Pattern:
        g = Graph.from_edges(int(data["n"]), [tuple(e) for e in data["edges"]])
        return cls(g, tuple(data["root"]), int(data["depth"]))

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


# -- tree codes -------------------------------------------------------------

def _child_counts(d: int, r: int, depth: int, has_parent: bool) -> range:
    """Admissible number of children for a tree vertex at ``depth``."""
    room = d - (1 if has_parent else 0)
    if depth >= r:
        return range(0, 1)
    if depth == r - 1:
        return range(0, room + 1)
    return range(room, room + 1)


def _codes_at(d: int, r: int, collapse: bool, budget: int) -> list[list[TreeCode]]:
    """``out[j]`` lists the codes of subtrees rooted at a non-root vertex of depth ``j``."""
    out: list[list[TreeCode]] = [[] for _ in range(r + 1)]
    out[r] = [()]
    for j in range(r - 1, -1, -1):
        counts = _child_counts(d, r, j, True)
        if j == r - 1:
            top = min(counts.stop - 1, 2) if collapse else counts.stop - 1
            out[j] = [((),) * k for k in range(top + 1)]
            continue
        level = []
        for k in counts:
            for combo in combinations_with_replacement(out[j + 1], k):
                level.append(tuple(sorted(combo)))
                if len(level) > budget:
                    raise SizeError(f"more than {budget} subtree codes at depth {j} (count so far {len(level)})")
        out[j] = sorted(set(level))
    return out


def tree_codes_vertex(d: int, r: int, collapse: bool = False, budget: int = DEFAULT_BUDGET) -> list[TreeCode]:
    """Codes of all trees in the vertex-rooted family, sorted."""
    if d < 1 or r < 0:
        raise ValueError("need d >= 1 and r >= 0")
    if r == 0:
        return [()]
    below = _codes_at(d, r, collapse, budget)[1]
    counts = _child_counts(d, r, 0, False)
    if r == 1 and collapse:
        counts = range(0, min(d, 2) + 1)
    out: list[TreeCode] = []
    for k in counts:
        for combo in combinations_with_replacement(below, k):
            out.append(tuple(sorted(combo)))
            if len(out) > budget:
                raise SizeError(f"more than {budget} trees (count so far {len(out)})")
    return sorted(set(out))


def tree_codes_edge(d: int, r: int, collapse: bool = False, budget: int = DEFAULT_BUDGET) -> list[tuple[TreeCode, TreeCode]]:
    """Unordered pairs of codes hanging from the two ends of the root edge."""
    if d < 1 or r < 0:
        raise ValueError("need d >= 1 and r >= 0")
    sides = _codes_at(d, r, collapse, budget)[0]
    n = len(sides) * (len(sides) + 1) // 2
    if n > budget:
        raise SizeError(f"{n} edge-rooted trees exceed the budget {budget}")
    return [(a, b) for i, a in enumerate(sides) for b in sides[i:]]


def code_size(code: TreeCode) -> int:
    return 1 + sum(code_size(c) for c in code)


def code_height(code: TreeCode) -> int:
    return 1 + max((code_height(c) for c in code), default=-1)


def _attach(code: TreeCode, parent: int | None, edges: list[tuple[int, int]], counter: list[int]) -> int:
    me = counter[0]
    counter[0] += 1
    if parent is not None:
        edges.append((parent, me))
    for child in code:
        _attach(child, me, edges, counter)
    return me


def decode_vertex(code: TreeCode, depth: int) -> Pattern:
    edges: list[tuple[int, int]] = []
    counter = [0]
    _attach(code, None, edges, counter)
    return Pattern(Graph.from_edges(counter[0], edges), (0,), depth)


def decode_edge(cu: TreeCode, cv: TreeCode, depth: int) -> Pattern:
    edges: list[tuple[int, int]] = []
    counter = [0]
    u = _attach(cu, None, edges, counter)
    v = _attach(cv, None, edges, counter)
    edges.append((u, v))
    return Pattern(Graph.from_edges(counter[0], edges), (u, v), depth)


def enumerate_tree_patterns_vertex(d: int, r: int, collapse: bool = False, budget: int = DEFAULT_BUDGET) -> list[Pattern]:
    return [decode_vertex(c, r) for c in tree_codes_vertex(d, r, collapse, budget)]


def enumerate_tree_patterns_edge(d: int, r: int, collapse: bool = False, budget: int = DEFAULT_BUDGET) -> list[Pattern]:
    return [decode_edge(a, b, r) for a, b in tree_codes_edge(d, r, collapse, budget)]


def collapse_pendants(p: Pattern) -> Pattern:
    """Keep at most two degree-1 children under every vertex of depth ``depth - 1``.

    Every maximum independent set contains all such children, so the
    dropped ones only add a constant to the deepest layer: the reduced
    pattern's constraint is never weaker than the original's.
    """
    dist = p.distances
    g = p.graph
    drop: set[int] = set()
    for v in range(g.n):
        if dist[v] != p.depth - 1:
            continue
        pend = [u for u in g.adj[v] if dist[u] == p.depth and g.degree(u) == 1]
        if len(pend) > 2:
            drop.update(pend[2:])
    if not drop:
        return p
    keep = [v for v in range(g.n) if v not in drop]
    index = {v: i for i, v in enumerate(keep)}
    return Pattern(g.induced(keep), tuple(index[v] for v in p.root), p.depth)


# -- constraints --------------------------------------------------------------

def constraint_bruteforce(p: Pattern, limit: int | None = None, method: str = "count") -> Constraint:
    """Average layer occupancy over all maximum independent sets of ``p``.

    ``method="enumerate"`` lists every maximum independent set and is capped
    by ``limit`` vertices; ``method="count"`` tallies them by memoised
    branching and accepts larger sparse patterns (four times the limit).
    """
    limit = DEFAULT_LIMIT if limit is None else limit
    cap = limit if method == "enumerate" else 4 * limit
    if p.graph.n > cap:
        raise SizeError(f"pattern has {p.graph.n} vertices, exhaustive limit is {cap}")
    return Constraint.from_tally(pattern_tally(p, method))


def pattern_tally(p: Pattern, method: str = "count") -> Tally:
    layer_masks = [sum(1 << v for v in layer) for layer in p.layers]
    if method == "count":
        _, n, sums = maximum_independent_tally(p.graph.masks, layer_masks)
        return sums, n
    if method != "enumerate":
        raise ValueError(f"unknown method {method!r}")
    _, sets = maximum_independent_masks(p.graph.masks)
    sums = tuple(sum(bin(s & m).count("1") for s in sets) for m in layer_masks)
    return sums, len(sets)


def _shift(t: Tally, head: int) -> Tally:
    s, n = t
    return (head,) + s, n


@lru_cache(maxsize=None)
def subtree_tallies(code: TreeCode) -> tuple[Tally, Tally]:
    """``(c0, c1)`` tallies of a rooted subtree: root forbidden, root forced."""
    c_all: Tally = ((), 1)
    c_out: Tally = ((), 1)
    for child in code:
        t0, t1 = subtree_tallies(child)
        c_all = tally_plus(c_all, tally_join(t0, t1))
        c_out = tally_plus(c_out, t0)
    return _shift(c_all, 0), _shift(c_out, c_out[1])


def _pad_to(c: Constraint, depth: int | None) -> Constraint:
    if depth is None or len(c.e) == depth + 1:
        return c
    if len(c.e) > depth + 1:
        raise ValueError(f"tree is deeper than {depth}")
    return Constraint(c.e + (c.e[0] * 0,) * (depth + 1 - len(c.e)), c.n)


def constraint_dp_vertex(t: TreeCode, depth: int | None = None) -> Constraint:
    c0, c1 = subtree_tallies(t)
    return _pad_to(Constraint.from_tally(tally_join(c0, c1)), depth)


def edge_tally(tu: TreeCode, tv: TreeCode) -> Tally:
    u0, u1 = subtree_tallies(tu)
    v0, v1 = subtree_tallies(tv)
    out = tally_join(tally_plus(u0, v0), tally_plus(u0, v1))
    return tally_join(out, tally_plus(u1, v0))


def constraint_dp_edge(tu: TreeCode, tv: TreeCode, depth: int | None = None) -> Constraint:
    return _pad_to(Constraint.from_tally(edge_tally(tu, tv)), depth)


def constraints_to_json(cs: Sequence[Constraint]) -> str:
    return json.dumps([c.to_json() for c in cs], sort_keys=True)


def iter_patterns_json(ps: Sequence[Pattern]) -> Iterator[str]:
    for p in ps:
        yield p.dumps()
