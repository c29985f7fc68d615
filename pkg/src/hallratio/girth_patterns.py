"""Regular patterns of depth at most 2 with a girth constraint.

Generation works on *cores*: patterns with every deepest-layer vertex of
degree at least 2.  Starting from the bare root and its children, a core
grows by one of four augmentations, each checked against the degree cap and
the girth bound through a bounded breadth-first distance test:

* a new deepest vertex joined to two or more layer-1 vertices;
* a new deepest vertex joined to one layer-1 vertex and one deepest vertex;
* two new adjacent deepest vertices, each with one layer-1 parent;
* a new edge inside layer 1 or inside the deepest layer.

Every core can be shrunk back to the skeleton by undoing one of these, so
breadth-first growth with isomorphism rejection (nauty certificates with the
layers as colour classes) reaches every core exactly once.  Patterns are
then obtained by hanging pendant leaves on layer-1 vertices.

When the girth exceeds every cycle length that fits in the depth, the
family is the acyclic one and the tree enumerators are used instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Callable, Iterator

import pynauty

from .graph import Graph, SizeError, _popcount
from .patterns import (
    DEFAULT_BUDGET,
    Pattern,
    enumerate_tree_patterns_edge,
    enumerate_tree_patterns_vertex,
)


def longest_cycle_in_depth(r: int, rooting: str) -> int:
    """Longest cycle a pattern of depth ``r`` can contain through non-tree edges."""
    return 2 * r + 1 if rooting == "vertex" else 2 * r + 2


def forces_trees(g: int, r: int, rooting: str) -> bool:
    return g > longest_cycle_in_depth(r, rooting)


@dataclass(frozen=True)
class Core:
    n: int
    adj: tuple[int, ...]  # bitmask adjacency
    roots: int  # number of layer-0 vertices (1 or 2)
    first: int  # number of layer-1 vertices

    @property
    def layer1(self) -> range:
        return range(self.roots, self.roots + self.first)

    def graph(self) -> Graph:
        return Graph.from_masks(self.adj)


def _far_enough(adj: list[int], x: int, y: int, k: int) -> bool:
    """True when ``dist(x, y) >= k``."""
    seen = front = 1 << x
    for _ in range(k - 1):
        nxt = 0
        f = front
        while f:
            b = f & -f
            f ^= b
            nxt |= adj[b.bit_length() - 1]
        nxt &= ~seen
        if nxt >> y & 1:
            return False
        seen |= nxt
        front = nxt
        if not front:
            return True
    return True


def _certificate(n: int, adj: list[int], roots: int, first: int) -> bytes:
    classes = [set(range(roots)), set(range(roots, roots + first))]
    if n > roots + first:
        classes.append(set(range(roots + first, n)))
    g = pynauty.Graph(
        n,
        adjacency_dict={i: [j for j in range(n) if adj[i] >> j & 1] for i in range(n)},
        vertex_coloring=classes,
    )
    return pynauty.certificate(g) + n.to_bytes(2, "little")


def _skeleton(d: int, rooting: str) -> tuple[list[int], int, int]:
    if rooting == "vertex":
        n = 1 + d
        adj = [0] * n
        for i in range(1, n):
            adj[0] |= 1 << i
            adj[i] |= 1
        return adj, 1, d
    n = 2 * d
    adj = [0] * n
    adj[0] |= 2
    adj[1] |= 1
    for i in range(2, d + 1):
        adj[0] |= 1 << i
        adj[i] |= 1
    for i in range(d + 1, n):
        adj[1] |= 1 << i
        adj[i] |= 2
    return adj, 2, 2 * (d - 1)


def enumerate_cores(
    d: int,
    g: int,
    r: int,
    rooting: str,
    budget: int = DEFAULT_BUDGET,
    log: Callable[[str], None] | None = None,
) -> list[Core]:
    """All non-isomorphic cores of depth ``r`` (1 or 2) with girth at least ``g``."""
    if rooting not in ("vertex", "edge"):
        raise ValueError(f"unknown rooting {rooting!r}")
    if g < 4:
        raise ValueError("girth must be at least 4")
    if r not in (1, 2):
        raise SizeError(f"cyclic patterns are generated only up to depth 2 (asked for depth {r})")
    adj0, roots, first = _skeleton(d, rooting)
    mid = roots + first
    seen = {_certificate(len(adj0), adj0, roots, first)}
    out = [Core(len(adj0), tuple(adj0), roots, first)]
    frontier = [out[0]]

    def push(n: int, adj: list[int], nxt: list[Core]) -> None:
        cert = _certificate(n, adj, roots, first)
        if cert in seen:
            return
        seen.add(cert)
        core = Core(n, tuple(adj), roots, first)
        nxt.append(core)
        out.append(core)
        if len(out) > budget:
            raise SizeError(f"more than {budget} cores (count so far {len(out)})")

    level = 0
    while frontier:
        level += 1
        nxt: list[Core] = []
        for core in frontier:
            n, adj = core.n, list(core.adj)
            free = [v for v in range(roots, n) if _popcount(adj[v]) < d]
            f1 = [v for v in free if v < mid]
            f2 = [v for v in free if v >= mid]
            if r == 2:
                for k in range(2, d + 1):
                    for parents in combinations(f1, k):
                        if all(_far_enough(adj, p, q, g - 2) for p, q in combinations(parents, 2)):
                            a2 = adj + [0]
                            for p in parents:
                                a2[p] |= 1 << n
                                a2[n] |= 1 << p
                            push(n + 1, a2, nxt)
                for p in f1:
                    for y in f2:
                        if _far_enough(adj, p, y, g - 2):
                            a2 = adj + [(1 << p) | (1 << y)]
                            a2[p] |= 1 << n
                            a2[y] |= 1 << n
                            push(n + 1, a2, nxt)
                for i, p in enumerate(f1):
                    for q in f1[i + 1 :]:
                        if _far_enough(adj, p, q, g - 3):
                            x, y = n, n + 1
                            a2 = adj + [(1 << p) | (1 << y), (1 << q) | (1 << x)]
                            a2[p] |= 1 << x
                            a2[q] |= 1 << y
                            push(n + 2, a2, nxt)
            for x, y in combinations(free, 2):
                if adj[x] >> y & 1 or (x < mid) != (y < mid):
                    continue
                if r == 1 and x >= mid:
                    continue
                if _far_enough(adj, x, y, g - 1):
                    a2 = list(adj)
                    a2[x] |= 1 << y
                    a2[y] |= 1 << x
                    push(n, a2, nxt)
        frontier = nxt
        if log:
            log(f"level {level}: {len(frontier)} new cores, {len(out)} total")
    return out


def pendant_options(core: Core, d: int, r: int, collapse: bool) -> list[range]:
    """Admissible pendant-leaf counts per layer-1 vertex (none at depth 1)."""
    if r < 2:
        return [range(1) for _ in core.layer1]
    out = []
    for w in core.layer1:
        room = d - _popcount(core.adj[w])
        out.append(range((min(room, 2) if collapse else room) + 1))
    return out


def with_pendants(core: Core, counts) -> tuple[list[int], int]:
    adj = list(core.adj)
    n = core.n
    for w, k in zip(core.layer1, counts):
        for _ in range(k):
            adj.append(1 << w)
            adj[w] |= 1 << n
            n += 1
    return adj, n


def core_patterns(core: Core, d: int, r: int, collapse: bool = True) -> Iterator[Pattern]:
    """Patterns obtained from ``core`` by hanging pendant leaves on layer-1 vertices."""
    root = tuple(range(core.roots))
    for counts in product(*pendant_options(core, d, r, collapse)):
        adj, _ = with_pendants(core, counts)
        yield Pattern(Graph.from_masks(adj), root, r)


def enumerate_girth_patterns(
    d: int,
    g: int,
    r: int,
    rooting: str,
    budget: int = DEFAULT_BUDGET,
    collapse: bool = False,
    log: Callable[[str], None] | None = None,
) -> list[Pattern]:
    """Regular patterns of depth ``r`` and girth at least ``g``.

    Acyclic families come from the tree enumerators and are pairwise
    non-isomorphic.  Cyclic families are non-isomorphic at the core level;
    different pendant assignments on one core may still be isomorphic,
    which never changes the set of constraints.
    """
    if forces_trees(g, r, rooting):
        if rooting == "vertex":
            return enumerate_tree_patterns_vertex(d, r, collapse, budget)
        return enumerate_tree_patterns_edge(d, r, collapse, budget)
    out: list[Pattern] = []
    for core in enumerate_cores(d, g, r, rooting, budget, log):
        for p in core_patterns(core, d, r, collapse):
            out.append(p)
            if len(out) > budget:
                raise SizeError(f"more than {budget} patterns (count so far {len(out)})")
    return out
