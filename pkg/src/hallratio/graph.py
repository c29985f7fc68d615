"""Small undirected graphs and exhaustive independent-set oracles.

Vertices are the integers ``0..n-1``.  Every enumeration routine works on
bitmask adjacency and is meant for desk-scale graphs (a few dozen vertices).
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

DEFAULT_LIMIT = 30

VertexSet = frozenset


class SizeError(ValueError):
    """Raised when an exhaustive routine is asked to handle too large an input."""


class GraphFormatError(ValueError):
    """Raised on malformed graph6 input; ``offset`` is the offending byte index."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[tuple[int, ...], ...] = field(repr=False)

    def __post_init__(self):
        if len(self.adj) != self.n:
            raise ValueError(f"adjacency has {len(self.adj)} rows for n={self.n}")
        for v, nbrs in enumerate(self.adj):
            if list(nbrs) != sorted(set(nbrs)):
                raise ValueError(f"neighbours of {v} not sorted and unique")
            for u in nbrs:
                if u == v:
                    raise ValueError(f"self-loop at {v}")
                if not 0 <= u < self.n:
                    raise ValueError(f"neighbour {u} of {v} out of range")
                if v not in self.adj[u]:
                    raise ValueError(f"edge {v}-{u} is not symmetric")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, tuple(tuple(sorted(s)) for s in nbrs))

    @classmethod
    def from_masks(cls, masks: Iterable[int]) -> Graph:
        masks = list(masks)
        return cls(len(masks), tuple(tuple(_bits(m)) for m in masks))

    @cached_property
    def masks(self) -> tuple[int, ...]:
        return tuple(sum(1 << u for u in nbrs) for nbrs in self.adj)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    @property
    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    def is_regular(self) -> bool:
        return len({len(a) for a in self.adj}) <= 1

    def induced(self, vertices: Iterable[int]) -> Graph:
        """Induced subgraph, relabelled in increasing order of ``vertices``."""
        keep = sorted(set(vertices))
        index = {v: i for i, v in enumerate(keep)}
        return Graph(
            len(keep),
            tuple(tuple(index[u] for u in self.adj[v] if u in index) for v in keep),
        )

    def is_independent(self, vertices: Iterable[int]) -> bool:
        mask = _to_mask(vertices)
        return all(not (self.masks[v] & mask) for v in _bits(mask))


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def _popcount(x: int) -> int:
    return bin(x).count("1")


# -- graph6 ---------------------------------------------------------------

_HEADER = ">>graph6<<"


def parse_graph6(text: str) -> Graph:
    data = text.strip("\n")
    base = 0
    if data.startswith(_HEADER):
        data = data[len(_HEADER):]
        base = len(_HEADER)
    raw = data.encode("ascii", errors="strict") if data.isascii() else None
    if raw is None:
        bad = next(i for i, ch in enumerate(data) if not ch.isascii())
        raise GraphFormatError("non-ASCII character", base + bad)
    if not raw:
        raise GraphFormatError("empty graph6 string", base)
    for i, b in enumerate(raw):
        if not 63 <= b <= 126:
            raise GraphFormatError(f"byte {b} outside 63..126", base + i)

    if raw[0] != 126:
        n, pos = raw[0] - 63, 1
    else:
        if len(raw) < 4:
            raise GraphFormatError("truncated extended vertex count", base + len(raw))
        if raw[1] == 126:
            raise GraphFormatError("vertex counts above 258047 are not supported", base + 1)
        n = ((raw[1] - 63) << 12) | ((raw[2] - 63) << 6) | (raw[3] - 63)
        pos = 4
        if n <= 62:
            raise GraphFormatError("extended form used for n <= 62", base)

    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    body = raw[pos:]
    if len(body) < nbytes:
        raise GraphFormatError("adjacency data too short", base + len(raw))
    if len(body) > nbytes:
        raise GraphFormatError("trailing garbage", base + pos + nbytes)

    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = body[k // 6] - 63
            if byte >> (5 - k % 6) & 1:
                edges.append((i, j))
            k += 1
    if nbytes:
        pad = 6 * nbytes - nbits
        if (body[-1] - 63) & ((1 << pad) - 1):
            raise GraphFormatError("non-zero padding bits", base + pos + nbytes - 1)
    return Graph.from_edges(n, edges)


def to_graph6(g: Graph) -> str:
    n = g.n
    if n <= 62:
        out = [n + 63]
    elif n <= 258047:
        out = [126, 63 + (n >> 12 & 63), 63 + (n >> 6 & 63), 63 + (n & 63)]
    else:
        raise ValueError("graph too large for graph6")
    masks = g.masks
    bits = [(masks[j] >> i) & 1 for j in range(1, n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k:k + 6]:
            val = (val << 1) | b
        out.append(val + 63)
    return bytes(out).decode("ascii")


# -- independent sets -------------------------------------------------------

def _check_limit(g: Graph, limit: int | None) -> None:
    limit = DEFAULT_LIMIT if limit is None else limit
    if g.n > limit:
        raise SizeError(f"graph has {g.n} vertices, exhaustive limit is {limit}")


def _matching_bound(cand: int, masks: tuple[int, ...] | list[int]) -> int:
    """Upper bound on alpha(G[cand]): |cand| minus a greedy matching."""
    size = 0
    free = cand
    while free:
        low = free & -free
        v = low.bit_length() - 1
        free ^= low
        nb = masks[v] & free
        if nb:
            free ^= nb & -nb
            size += 1
    return _popcount(cand) - size


def maximum_independent_masks(masks: tuple[int, ...] | list[int], universe: int | None = None) -> tuple[int, list[int]]:
    """All maximum independent sets of the graph induced on ``universe``.

    Returns ``(alpha, sets)`` with each set a bitmask.  Branch and bound:
    isolated candidates join every extension, otherwise branch on a vertex
    of largest remaining degree.
    """
    if universe is None:
        universe = (1 << len(masks)) - 1
    best = [0]
    found: list[int] = []

    def rec(cur: int, size: int, cand: int) -> None:
        # isolated vertices belong to every maximum extension
        while True:
            iso = 0
            for v in _bits(cand):
                if not masks[v] & cand:
                    iso |= 1 << v
            if not iso:
                break
            cur |= iso
            size += _popcount(iso)
            cand &= ~iso
        if not cand:
            if size > best[0]:
                best[0] = size
                found.clear()
            if size == best[0]:
                found.append(cur)
            return
        if size + _matching_bound(cand, masks) < best[0]:
            return
        pick, pick_deg = -1, -1
        for v in _bits(cand):
            deg = _popcount(masks[v] & cand)
            if deg > pick_deg:
                pick, pick_deg = v, deg
        bit = 1 << pick
        rec(cur | bit, size + 1, cand & ~bit & ~masks[pick])
        rec(cur, size, cand & ~bit)

    rec(0, 0, universe)
    return best[0], found


def _component(start: int, cand: int, masks: Sequence[int]) -> int:
    comp = front = 1 << start
    while front:
        nxt = 0
        for v in _bits(front):
            nxt |= masks[v]
        front = nxt & cand & ~comp
        comp |= front
    return comp


def maximum_independent_tally(
    masks: Sequence[int], weights: Sequence[int], universe: int | None = None
) -> tuple[int, int, tuple[int, ...]]:
    """Count maximum independent sets without listing them.

    ``weights`` are vertex masks (for instance, the layers of a pattern).
    Returns ``(alpha, count, sums)`` where ``sums[i]`` is the total of
    ``|I & weights[i]|`` over all maximum independent sets ``I``.  Memoised
    branching with splitting into connected components.
    """
    if universe is None:
        universe = (1 << len(masks)) - 1
    k = len(weights)
    zero = (0,) * k
    memo: dict[int, tuple[int, int, tuple[int, ...]]] = {}

    def rec(cand: int) -> tuple[int, int, tuple[int, ...]]:
        if not cand:
            return 0, 1, zero
        hit = memo.get(cand)
        if hit is not None:
            return hit
        low = cand & -cand
        comp = _component(low.bit_length() - 1, cand, masks)
        if comp != cand:
            a1, n1, s1 = rec(comp)
            a2, n2, s2 = rec(cand & ~comp)
            out = a1 + a2, n1 * n2, tuple(x * n2 + y * n1 for x, y in zip(s1, s2))
        else:
            pick, pick_deg = -1, -1
            for v in _bits(cand):
                deg = _popcount(masks[v] & cand)
                if deg > pick_deg:
                    pick, pick_deg = v, deg
            bit = 1 << pick
            if pick_deg == 0:
                out = 1, 1, tuple(1 if w & bit else 0 for w in weights)
            else:
                a1, n1, s1 = rec(cand & ~bit & ~masks[pick])
                a1 += 1
                s1 = tuple(x + (n1 if w & bit else 0) for x, w in zip(s1, weights))
                a2, n2, s2 = rec(cand & ~bit)
                if a1 > a2:
                    out = a1, n1, s1
                elif a2 > a1:
                    out = a2, n2, s2
                else:
                    out = a1, n1 + n2, tuple(x + y for x, y in zip(s1, s2))
        memo[cand] = out
        return out

    return rec(universe)


def _sorted_sets(masks: list[int]) -> list[VertexSet]:
    return [frozenset(t) for t in sorted(tuple(_bits(m)) for m in masks)]


def maximum_independent_sets(g: Graph, limit: int | None = None) -> list[VertexSet]:
    _check_limit(g, limit)
    _, sets = maximum_independent_masks(g.masks)
    return _sorted_sets(sets)


def independence_number(g: Graph, limit: int | None = None) -> int:
    _check_limit(g, limit)
    masks = g.masks
    best = [0]

    def rec(size: int, cand: int) -> None:
        if not cand:
            best[0] = max(best[0], size)
            return
        if size + _matching_bound(cand, masks) <= best[0]:
            return
        pick, pick_deg = -1, -1
        for v in _bits(cand):
            deg = _popcount(masks[v] & cand)
            if deg > pick_deg:
                pick, pick_deg = v, deg
        if pick_deg == 0:
            best[0] = max(best[0], size + _popcount(cand))
            return
        bit = 1 << pick
        rec(size + 1, cand & ~bit & ~masks[pick])
        rec(size, cand & ~bit)

    rec(0, (1 << g.n) - 1)
    return best[0]


def maximal_independent_masks(masks: tuple[int, ...] | list[int], universe: int | None = None) -> list[int]:
    """Bron-Kerbosch with pivoting on the complement graph."""
    if universe is None:
        universe = (1 << len(masks)) - 1
    out: list[int] = []

    def rec(r: int, p: int, x: int) -> None:
        if not p and not x:
            out.append(r)
            return
        # pivot maximising |P & non-neighbours(u)|
        pool = p | x
        best_u, best_cnt = -1, -1
        for u in _bits(pool):
            cnt = _popcount(p & ~masks[u] & ~(1 << u))
            if cnt > best_cnt:
                best_u, best_cnt = u, cnt
        for v in _bits(p & (masks[best_u] | (1 << best_u))):
            nonadj = universe & ~masks[v] & ~(1 << v)
            rec(r | 1 << v, p & nonadj, x & nonadj)
            p &= ~(1 << v)
            x |= 1 << v

    rec(0, universe, 0)
    return out


def maximal_independent_sets(g: Graph, limit: int | None = None) -> list[VertexSet]:
    _check_limit(g, limit)
    return _sorted_sets(maximal_independent_masks(g.masks))


def all_independent_masks(masks: tuple[int, ...] | list[int], universe: int | None = None) -> list[int]:
    if universe is None:
        universe = (1 << len(masks)) - 1
    out: list[int] = []

    def rec(cur: int, cand: int) -> None:
        if not cand:
            out.append(cur)
            return
        low = cand & -cand
        v = low.bit_length() - 1
        rec(cur, cand ^ low)
        rec(cur | low, cand & ~low & ~masks[v])

    rec(0, universe)
    return out


# -- invariants -------------------------------------------------------------

def girth(g: Graph) -> float:
    """Length of a shortest cycle, ``math.inf`` for forests."""
    best = math.inf
    for s in range(g.n):
        dist = {s: 0}
        parent = {s: -1}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            if 2 * dist[u] + 1 >= best:
                break
            for w in g.adj[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    best = min(best, dist[u] + dist[w] + 1)
    return best


def distances_from(g: Graph, sources: Iterable[int]) -> list[float]:
    dist = [math.inf] * g.n
    queue = deque()
    for s in sources:
        dist[s] = 0
        queue.append(s)
    while queue:
        u = queue.popleft()
        for w in g.adj[u]:
            if dist[w] == math.inf:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def clique_number_at(g: Graph, v: int) -> int:
    if not 0 <= v < g.n:
        raise IndexError(f"vertex {v} out of range for n={g.n}")
    masks = g.masks
    best = [0]

    def rec(size: int, cand: int) -> None:
        if size + _popcount(cand) <= best[0]:
            return
        if not cand:
            best[0] = size
            return
        low = cand & -cand
        u = low.bit_length() - 1
        rec(size + 1, cand & masks[u])
        rec(size, cand ^ low)

    rec(0, masks[v])
    return best[0] + 1


def has_cycle_of_length(g: Graph, length: int) -> bool:
    """Whether ``g`` contains a cycle of exactly ``length`` vertices (DFS, small graphs)."""
    if length < 3:
        return False
    masks = g.masks
    for start in range(g.n):
        stack = [(start, 1 << start, 1)]
        while stack:
            u, seen, k = stack.pop()
            if k == length:
                if masks[u] >> start & 1:
                    return True
                continue
            for w in _bits(masks[u] & ~seen):
                if w > start:
                    stack.append((w, seen | 1 << w, k + 1))
    return False


def cycle(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete(n: int) -> Graph:
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def star(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def empty(n: int) -> Graph:
    return Graph(n, tuple(() for _ in range(n)))
