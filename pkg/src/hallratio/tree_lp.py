"""Constraint families of acyclic patterns built from subtree states.

Two subtrees hanging at the same depth behave identically inside any larger
tree as soon as their root-forbidden and root-forced tallies ``(c0, c1)``
coincide.  Enumerating these *states* level by level is exponentially
cheaper than enumerating tree codes, and the root constraints are then
obtained from multisets of states.

When the root family is too large to list, :func:`solve_tree_lp` runs a
cutting-plane loop: solve on a subset of rows, screen every multiset in
floating point with numpy, add the rows that come within a safety margin
of violation after checking them exactly, and repeat until the screen is
clean.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb
from typing import Callable, Iterator, Sequence

import numpy as np

from .constraints import Constraint, Tally, prune, tally_join, tally_plus
from .graph import SizeError
from .lp import LinearProgram, LPSolution, build_lp_edge, build_lp_vertex, solve_min

State = tuple[Tally, Tally]

LEAF: State = (((0,), 1), ((1,), 1))
EMPTY: Tally = ((), 1)

DEFAULT_EXACT_LIMIT = 3_000_000
SCREEN_MARGIN = 1e-9


def _pad(t: Tally, length: int) -> Tally:
    s, n = t
    return s + (0,) * (length - len(s)), n


def lift(children: Sequence[State], length: int) -> State:
    """State of a vertex whose children have the given states."""
    free, out = EMPTY, EMPTY
    for c0, c1 in children:
        free = tally_plus(free, tally_join(c0, c1))
        out = tally_plus(out, c0)
    c0 = ((0,) + free[0], free[1])
    c1 = ((out[1],) + out[0], out[1])
    return _pad(c0, length), _pad(c1, length)


def subtree_states(d: int, r: int, collapse: bool = True) -> dict[int, list[State]]:
    """Distinct states of non-root subtrees, keyed by the depth of their root.

    A vertex at depth ``r - 1`` carries 0 to ``d - 1`` leaves (at most 2 with
    ``collapse``); shallower non-root vertices carry exactly ``d - 1``
    children.  Depths run from ``r`` down to 1.
    """
    if d < 1 or r < 1:
        raise ValueError("need d >= 1 and r >= 1")
    out: dict[int, list[State]] = {r: [(_pad(LEAF[0], 1), _pad(LEAF[1], 1))]}
    top = min(d - 1, 2) if collapse else d - 1
    out[r - 1] = sorted({lift([LEAF] * k, 2) for k in range(top + 1)})
    for depth in range(r - 2, 0, -1):
        length = r - depth + 1
        out[depth] = sorted({lift(combo, length) for combo in combinations_with_replacement(out[depth + 1], d - 1)})
    return out


def root_children(d: int, r: int, rooting: str, collapse: bool = True) -> tuple[list[State], range]:
    """States a root (or a root-edge endpoint) draws its children from, and how many."""
    room = d if rooting == "vertex" else d - 1
    if r == 1:
        top = min(room, 2) if collapse else room
        return [LEAF], range(0, top + 1)
    return subtree_states(d, r, collapse)[1], range(room, room + 1)


def vertex_root_tally(children: Sequence[State], r: int) -> Tally:
    c0, c1 = lift(children, r + 1)
    return tally_join(c0, c1)


def endpoint_states(d: int, r: int, collapse: bool = True) -> list[State]:
    if r == 0:
        return [(((0,), 1), ((1,), 1))]
    pool, counts = root_children(d, r, "edge", collapse)
    return sorted({lift(combo, r + 1) for k in counts for combo in combinations_with_replacement(pool, k)})


def edge_root_tally(u: State, v: State) -> Tally:
    (u0, u1), (v0, v1) = u, v
    return tally_join(tally_join(tally_plus(u0, v0), tally_plus(u0, v1)), tally_plus(u1, v0))


def root_count(d: int, r: int, rooting: str, collapse: bool = True) -> int:
    """Number of root multisets the family is built from (before deduplication)."""
    if r == 0:
        return 1
    if rooting == "vertex":
        pool, counts = root_children(d, r, rooting, collapse)
        return sum(comb(len(pool) + k - 1, k) for k in counts)
    m = len(endpoint_states(d, r, collapse))
    return m * (m + 1) // 2


def iter_root_tallies(d: int, r: int, rooting: str, collapse: bool = True) -> Iterator[Tally]:
    if rooting not in ("vertex", "edge"):
        raise ValueError(f"unknown rooting {rooting!r}")
    if r == 0:
        yield ((1,), 1) if rooting == "vertex" else ((1,), 2)
        return
    if rooting == "vertex":
        pool, counts = root_children(d, r, rooting, collapse)
        for k in counts:
            for combo in combinations_with_replacement(pool, k):
                yield vertex_root_tally(combo, r)
        return
    ends = endpoint_states(d, r, collapse)
    for i, u in enumerate(ends):
        for v in ends[i:]:
            yield edge_root_tally(u, v)


def tree_constraints(
    d: int, r: int, rooting: str, collapse: bool = True, limit: int = DEFAULT_EXACT_LIMIT
) -> list[Constraint]:
    """Distinct constraints of the acyclic family, sorted by their vector."""
    total = root_count(d, r, rooting, collapse)
    if total > limit:
        raise SizeError(f"{total} root multisets exceed the exact limit {limit}")
    seen: dict[tuple[Fraction, ...], Constraint] = {}
    for t in iter_root_tallies(d, r, rooting, collapse):
        c = Constraint.from_tally(t)
        if c.e not in seen or c.n < seen[c.e].n:
            seen[c.e] = c
    return [seen[e] for e in sorted(seen)]


# -- cutting planes for vertex-rooted families too large to list -----------------

@dataclass
class _Screen:
    """Float summaries of depth-1 states used to price root multisets."""

    norm_free: np.ndarray
    norm_out: np.ndarray
    log_free: np.ndarray
    log_out: np.ndarray
    vec_free: np.ndarray  # per-state e of join(c0, c1), shifted one layer down
    vec_out: np.ndarray  # per-state e of c0, shifted one layer down


def _screen_data(pool: Sequence[State], r: int) -> _Screen:
    def shifted(t: Tally) -> list[float]:
        s, n = t
        return [0.0] + [x / n for x in s] + [0.0] * (r - len(s))

    free = [tally_join(c0, c1) for c0, c1 in pool]
    out = [c0 for c0, _ in pool]
    return _Screen(
        np.array([sum(s) // n for s, n in free], dtype=np.int64),
        np.array([sum(s) // n for s, n in out], dtype=np.int64),
        np.array([math.log(n) for _, n in free]),
        np.array([math.log(n) for _, n in out]),
        np.array([shifted(t)[: r + 1] for t in free]),
        np.array([shifted(t)[: r + 1] for t in out]),
    )


def _multisets(n: int, k: int) -> np.ndarray:
    """All non-decreasing index tuples of length ``k`` over ``range(n)``."""
    if k == 0:
        return np.zeros((1, 0), dtype=np.int32)
    rows = list(combinations_with_replacement(range(n), k))
    return np.array(rows, dtype=np.int32)


def screen_vertex_roots(
    pool: Sequence[State], k: int, r: int, alpha: Sequence[Fraction], margin: float = SCREEN_MARGIN
) -> list[tuple[int, ...]]:
    """Multisets of ``k`` pool states whose root constraint may give ``alpha . e < 1 + margin``.

    Values are computed in floating point; anything the screen passes is at
    least ``1 + margin`` up to rounding far below the margin, so rows not
    returned are satisfied exactly.
    """
    data = _screen_data(pool, r)
    a = np.array([float(x) for x in alpha])
    val_free = data.vec_free @ a
    val_out = data.vec_out @ a
    n = len(pool)
    tail = _multisets(n, k - 1)
    hits: list[tuple[int, ...]] = []
    for first in range(n):
        rest = tail[tail[:, 0] >= first] if k > 1 else tail
        idx = np.concatenate([np.full((len(rest), 1), first, dtype=np.int32), rest], axis=1)
        nx = data.norm_free[idx].sum(axis=1)
        ny = 1 + data.norm_out[idx].sum(axis=1)
        vx = val_free[idx].sum(axis=1)
        vy = a[0] + val_out[idx].sum(axis=1)
        w = np.exp(np.clip(data.log_free[idx].sum(axis=1) - data.log_out[idx].sum(axis=1), -700, 700))
        tie = (vx * w + vy) / (w + 1)
        val = np.where(nx > ny, vx, np.where(nx < ny, vy, tie))
        for row in idx[val < 1 + margin]:
            hits.append(tuple(int(i) for i in row))
    return hits


@dataclass(frozen=True)
class CuttingPlaneResult:
    solution: LPSolution
    lp: LinearProgram
    rows: tuple[Constraint, ...]
    rounds: int
    screened: int


def solve_vertex_by_cuts(
    d: int,
    r: int,
    collapse: bool = True,
    seed_rows: int = 4000,
    batch: int = 2000,
    max_rounds: int = 200,
    log: Callable[[str], None] | None = None,
) -> CuttingPlaneResult:
    """Optimum of the vertex-rooted tree LP without listing every root constraint."""
    pool, counts = root_children(d, r, "vertex", collapse)
    if len(counts) != 1:
        raise ValueError("cutting planes need a fixed root degree (depth >= 2)")
    k = counts[0]
    total = comb(len(pool) + k - 1, k)
    rng = np.random.default_rng(0)
    start = {tuple([i] * k) for i in range(len(pool))}
    while len(start) < min(seed_rows, total):
        start.add(tuple(sorted(int(x) for x in rng.integers(0, len(pool), size=k))))
    rows: dict[tuple[Fraction, ...], Constraint] = {}

    def add(combos) -> int:
        added = 0
        for combo in combos:
            c = Constraint.from_tally(vertex_root_tally([pool[i] for i in combo], r))
            if c.e not in rows:
                rows[c.e] = c
                added += 1
        return added

    add(sorted(start))
    for rounds in range(1, max_rounds + 1):
        kept = prune(list(rows.values()))
        lp = build_lp_vertex(kept, d, r)
        sol = solve_min(lp)
        hits = screen_vertex_roots(pool, k, r, sol.alpha)
        exact_bad = []
        for combo in hits:
            e = Constraint.from_tally(vertex_root_tally([pool[i] for i in combo], r)).e
            if sum((x * y for x, y in zip(e, sol.alpha)), Fraction(0)) < 1:
                exact_bad.append(combo)
        if log:
            log(f"round {rounds}: {len(kept)} rows, value {sol.value}, {len(hits)} near, {len(exact_bad)} violated")
        if not exact_bad:
            return CuttingPlaneResult(sol, lp, tuple(kept), rounds, total)
        add(exact_bad[:batch])
    raise RuntimeError(f"cutting planes did not converge in {max_rounds} rounds")


def build_tree_lp(cs: Sequence[Constraint], d: int, r: int, rooting: str) -> LinearProgram:
    return build_lp_vertex(cs, d, r) if rooting == "vertex" else build_lp_edge(cs, d, r)
