"""Edge-rooted depth-2 patterns of girth at least 6, enumerated as bipartite cores.

Let the root edge be ``uv`` with ``m = d - 1`` children ``a_1..a_m`` of ``u``
and ``b_1..b_m`` of ``v``.  Girth 6 forces every depth-2 vertex to have a
single parent and allows edges only between a grandchild of ``u`` (a *row*)
and a grandchild of ``v`` (a *column*).  Rows are indexed ``i * m + k`` for
slot ``k`` under ``a_i``; a column is the bitmask of its row neighbours.
The girth condition becomes:

* a column meets each A-group in at most one row;
* columns under the same ``b_j`` have disjoint neighbourhoods;
* two columns share at most one row.

A *core* is the list of non-isolated columns grouped by ``b_j``.  Isolated
depth-2 vertices are pendant leaves and are added afterwards, at most two
per parent (a parent with two pendant leaves is in no maximum independent
set, so further leaves only shift the deepest coordinate up).

Cores are generated one B-group at a time.  Partial cores are reduced to a
canonical form under the row symmetries (permuting A-groups and slots) and
B-groups are added in non-increasing order of their (columns, edges) key.
The last group is not canonicalised: each completed core is priced at once
and only its constraint tallies are kept.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable

import numpy as np
from numba import njit, types
from numba.typed import Dict

from .graph import Graph, SizeError
from .patterns import Pattern

MAX_DEGREE = 4  # canonical keys of m - 1 groups must fit in 63 bits


def column_masks(m: int) -> list[int]:
    """Non-empty row sets meeting every A-group at most once."""
    out = []
    for choice in itertools.product(range(m + 1), repeat=m):
        mask = 0
        for i, c in enumerate(choice):
            if c:
                mask |= 1 << (i * m + c - 1)
        if mask:
            out.append(mask)
    return out


def group_configs(m: int) -> tuple[np.ndarray, np.ndarray]:
    """Every admissible B-group (pairwise disjoint columns), largest key first.

    Returns the configurations as a zero-padded ``(count, m)`` array with
    columns sorted descending, and the rank of each key (0 = largest).
    """
    cols = column_masks(m)
    confs: list[tuple[int, ...]] = [()]
    for k in range(1, m + 1):
        for chosen in itertools.combinations(cols, k):
            if all(not (a & b) for a, b in itertools.combinations(chosen, 2)):
                confs.append(tuple(sorted(chosen, reverse=True)))
    keys = [(len(c), sum(bin(x).count("1") for x in c)) for c in confs]
    order = sorted(range(len(confs)), key=lambda i: keys[i], reverse=True)
    distinct = sorted(set(keys), reverse=True)
    arr = np.zeros((len(confs), m), dtype=np.int64)
    rank = np.zeros(len(confs), dtype=np.int64)
    for pos, i in enumerate(order):
        arr[pos, : len(confs[i])] = confs[i]
        rank[pos] = distinct.index(keys[i])
    return arr, rank


def row_permutation_tables(m: int) -> np.ndarray:
    """Lookup tables mapping a row mask through each row symmetry."""
    size = m * m
    tables = []
    for gp in itertools.permutations(range(m)):
        for slots in itertools.product(list(itertools.permutations(range(m))), repeat=m):
            image = [gp[i] * m + slots[i][k] for i in range(m) for k in range(m)]
            table = np.zeros(1 << size, dtype=np.int64)
            for x in range(1 << size):
                y = 0
                for b in range(size):
                    if x >> b & 1:
                        y |= 1 << image[b]
                table[x] = y
            tables.append(table)
    return np.array(tables)


@njit(cache=True)
def _popcount(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


@njit(cache=True)
def _shares_at_most_one(prev, nprev, conf):
    for a in range(nprev):
        for t in range(conf.shape[0]):
            b = conf[t]
            if b == 0:
                break
            if _popcount(prev[a] & b) > 1:
                return False
    return True


@njit(cache=True)
def _canonical_key(groups, ng, m, tables, bits):
    best = -1
    tmp = np.zeros(m, dtype=np.int64)
    for p in range(tables.shape[0]):
        key = 0
        for g in range(ng):
            for t in range(m):
                x = groups[g, t]
                tmp[t] = tables[p, x] if x else 0
            for i in range(m):
                for j in range(i + 1, m):
                    if tmp[j] > tmp[i]:
                        z = tmp[i]
                        tmp[i] = tmp[j]
                        tmp[j] = z
            for t in range(m):
                key = (key << bits) | tmp[t]
        if best < 0 or key < best:
            best = key
    return best


@njit(cache=True)
def _group_rank(group, confs, rank):
    nc = 0
    ne = 0
    for t in range(group.shape[0]):
        if group[t]:
            nc += 1
            ne += _popcount(group[t])
    for c in range(confs.shape[0]):
        nc2 = 0
        ne2 = 0
        for t in range(confs.shape[1]):
            if confs[c, t]:
                nc2 += 1
                ne2 += _popcount(confs[c, t])
        if nc2 == nc and ne2 == ne:
            return rank[c]
    return -1


@njit(cache=True)
def _extend_level(reps, ng, confs, rank, tables, m, bits):
    nrep = reps.shape[0]
    out = np.empty(nrep * confs.shape[0], dtype=np.int64)
    cnt = 0
    prev = np.zeros(m * m, dtype=np.int64)
    groups = np.zeros((m, m), dtype=np.int64)
    for i in range(nrep):
        npv = 0
        for g in range(ng):
            for t in range(m):
                if reps[i, g, t]:
                    prev[npv] = reps[i, g, t]
                    npv += 1
        last = _group_rank(reps[i, ng - 1], confs, rank) if ng > 0 else 0
        for c in range(confs.shape[0]):
            if rank[c] < last or not _shares_at_most_one(prev, npv, confs[c]):
                continue
            for g in range(ng):
                for t in range(m):
                    groups[g, t] = reps[i, g, t]
            for t in range(m):
                groups[ng, t] = confs[c, t]
            out[cnt] = _canonical_key(groups, ng + 1, m, tables, bits)
            cnt += 1
    return out[:cnt]


@njit(cache=True)
def core_table(cols, m, best, count):
    """``best[A, B]``, ``count[A, B]``: independence number and number of maximum
    independent sets of the core restricted to rows of A-groups in ``A`` and
    columns of B-groups in ``B``.
    """
    size = m * m
    nA = 1 << m
    row_adj = np.zeros(size, dtype=np.int64)
    used = 0
    for c in range(m * m):
        x = cols[c]
        if x:
            used |= x
            for r in range(size):
                if x >> r & 1:
                    row_adj[r] |= 1 << c
    cols_of = np.zeros(nA, dtype=np.int64)
    for rb in range(nA):
        s = 0
        for j in range(m):
            if rb >> j & 1:
                for k in range(m):
                    if cols[j * m + k]:
                        s |= 1 << (j * m + k)
        cols_of[rb] = s
    for a in range(nA):
        for b in range(nA):
            best[a, b] = -1
            count[a, b] = 0
    x = 0
    while True:
        blocked = 0
        groups = 0
        y = x
        while y:
            low = y & -y
            r = 0
            while (low >> r) != 1:
                r += 1
            blocked |= row_adj[r]
            groups |= 1 << (r // m)
            y ^= low
        px = _popcount(x)
        for rb in range(nA):
            v = px + _popcount(cols_of[rb] & ~blocked)
            if v > best[groups, rb]:
                best[groups, rb] = v
                count[groups, rb] = 1
            elif v == best[groups, rb]:
                count[groups, rb] += 1
        if x == used:
            break
        x = (x - used) & used
    # sum over subsets of A-groups, in the (max, count) semiring
    for bit in range(m):
        for a in range(nA):
            if a >> bit & 1:
                a0 = a ^ (1 << bit)
                for rb in range(nA):
                    v = best[a0, rb]
                    if v > best[a, rb]:
                        best[a, rb] = v
                        count[a, rb] = count[a0, rb]
                    elif v == best[a, rb] and v >= 0:
                        count[a, rb] += count[a0, rb]


@njit(cache=True)
def _options_tally(best, count, pend_a, pend_b, m, out):
    """Tally ``(S0, S1, S2, n)`` of a pattern from its core table and pendant counts.

    Options: ``u`` in the set with a subset of the ``b_j``; ``v`` in with a
    subset of the ``a_i``; or neither root vertex with non-empty subsets on
    both sides.  A-groups or B-groups whose parent is chosen lose their
    grandchildren; every other pendant leaf is always taken.
    """
    full = (1 << m) - 1
    nA = 1 << m
    top = -1
    n = 0
    s0 = 0
    s1 = 0
    s2 = 0
    for typ in range(3):
        for x in range(nA):
            for y in range(nA):
                if typ < 2:
                    if y > 0:
                        break
                    if typ == 0:
                        ra = full
                        rb = full ^ x
                    else:
                        ra = full ^ x
                        rb = full
                    l0 = 1
                    l1 = _popcount(x)
                else:
                    if x == 0 or y == 0:
                        continue
                    ra = full ^ x
                    rb = full ^ y
                    l0 = 0
                    l1 = _popcount(x) + _popcount(y)
                l2 = best[ra, rb]
                for i in range(m):
                    if ra >> i & 1:
                        l2 += pend_a[i]
                    if rb >> i & 1:
                        l2 += pend_b[i]
                size = l0 + l1 + l2
                c = count[ra, rb]
                if size > top:
                    top = size
                    n = c
                    s0 = c * l0
                    s1 = c * l1
                    s2 = c * l2
                elif size == top:
                    n += c
                    s0 += c * l0
                    s1 += c * l1
                    s2 += c * l2
    out[0] = s0
    out[1] = s1
    out[2] = s2
    out[3] = n


@njit(cache=True)
def _group_loads(cols, m, used_a, used_b):
    used = 0
    for c in range(m * m):
        used |= cols[c]
    for a in range(m):
        k = 0
        for t in range(m):
            if used >> (a * m + t) & 1:
                k += 1
        used_a[a] = k
    for b in range(m):
        k = 0
        for t in range(m):
            if cols[b * m + t]:
                k += 1
        used_b[b] = k


@njit(cache=True)
def _pendant_sweep(best, count, used_a, used_b, m, tallies):
    """Add the tally of every pendant assignment (at most two per parent)."""
    cap_a = np.zeros(m, dtype=np.int64)
    cap_b = np.zeros(m, dtype=np.int64)
    for i in range(m):
        cap_a[i] = min(2, m - used_a[i])
        cap_b[i] = min(2, m - used_b[i])
    pend_a = np.zeros(m, dtype=np.int64)
    pend_b = np.zeros(m, dtype=np.int64)
    out = np.zeros(4, dtype=np.int64)
    while True:
        _options_tally(best, count, pend_a, pend_b, m, out)
        key = (out[0], out[1], out[2], out[3])
        tallies[key] = tallies.get(key, 0) + 1
        k = 0
        while k < 2 * m:
            if k < m:
                if pend_a[k] < cap_a[k]:
                    pend_a[k] += 1
                    break
                pend_a[k] = 0
            else:
                j = k - m
                if pend_b[j] < cap_b[j]:
                    pend_b[j] += 1
                    break
                pend_b[j] = 0
            k += 1
        if k == 2 * m:
            return


@njit(cache=True)
def _complete_and_price(reps, ng, confs, rank, m, tallies):
    nA = 1 << m
    total = 0
    prev = np.zeros(m * m, dtype=np.int64)
    cols = np.zeros(m * m, dtype=np.int64)
    best = np.zeros((nA, nA), dtype=np.int64)
    count = np.zeros((nA, nA), dtype=np.int64)
    used_a = np.zeros(m, dtype=np.int64)
    used_b = np.zeros(m, dtype=np.int64)
    for i in range(reps.shape[0]):
        npv = 0
        for g in range(ng):
            for t in range(m):
                if reps[i, g, t]:
                    prev[npv] = reps[i, g, t]
                    npv += 1
        last = _group_rank(reps[i, ng - 1], confs, rank) if ng > 0 else 0
        for c in range(confs.shape[0]):
            if rank[c] < last or not _shares_at_most_one(prev, npv, confs[c]):
                continue
            total += 1
            for g in range(ng):
                for t in range(m):
                    cols[g * m + t] = reps[i, g, t]
            for t in range(m):
                cols[ng * m + t] = confs[c, t]
            core_table(cols, m, best, count)
            _group_loads(cols, m, used_a, used_b)
            _pendant_sweep(best, count, used_a, used_b, m, tallies)
    return total


def _decode(keys: np.ndarray, ng: int, m: int) -> np.ndarray:
    bits = m * m
    out = np.zeros((len(keys), m, m), dtype=np.int64)
    mask = (1 << bits) - 1
    for i, key in enumerate(keys.tolist()):
        key = int(key)
        for g in range(ng - 1, -1, -1):
            for t in range(m - 1, -1, -1):
                out[i, g, t] = key & mask
                key >>= bits
    return out


def partial_cores(d: int, log: Callable[[str], None] | None = None) -> tuple[np.ndarray, int, np.ndarray, np.ndarray]:
    """Canonical cores with ``m - 1`` B-groups filled, plus the group configurations."""
    if not 2 <= d <= MAX_DEGREE:
        raise SizeError(f"bipartite enumeration supports 2 <= d <= {MAX_DEGREE}, got d={d}")
    m = d - 1
    confs, rank = group_configs(m)
    tables = row_permutation_tables(m)
    reps = np.zeros((1, m, m), dtype=np.int64)
    ng = 0
    while ng < m - 1:
        keys = np.unique(_extend_level(reps, ng, confs, rank, tables, m, m * m))
        ng += 1
        reps = _decode(keys, ng, m)
        if log:
            log(f"level {ng}: {len(reps)} partial cores")
    return reps, ng, confs, rank


def _new_tally_dict():
    return Dict.empty(key_type=types.UniTuple(types.int64, 4), value_type=types.int64)


def _price_chunk(args) -> tuple[dict, int]:
    reps, ng, confs, rank, m = args
    tallies = _new_tally_dict()
    total = _complete_and_price(reps, ng, confs, rank, m, tallies)
    return dict(tallies), total


@dataclass(frozen=True)
class CoreTallies:
    """Distinct pattern tallies ``((S0, S1, S2), n)`` with multiplicities."""

    d: int
    tallies: dict[tuple[tuple[int, int, int], int], int]
    cores: int
    partial: int

    @property
    def patterns(self) -> int:
        return sum(self.tallies.values())


def girth6_edge_tallies(
    d: int, chunk: int = 500, workers: int = 1, log: Callable[[str], None] | None = None
) -> CoreTallies:
    """Constraint tallies of every edge-rooted depth-2 pattern of girth at least 6.

    Pendant leaves are capped at two per parent.  Each labelled core whose
    first ``m - 1`` groups are canonical is priced once, so the
    multiplicities count labelled cores, not isomorphism classes.
    """
    reps, ng, confs, rank = partial_cores(d, log)
    m = d - 1
    jobs = [(reps[s : s + chunk], ng, confs, rank, m) for s in range(0, len(reps), chunk)]
    merged: dict[tuple[int, int, int, int], int] = {}
    total = 0

    def absorb(part: dict, k: int, done: int) -> None:
        nonlocal total
        for key, v in part.items():
            merged[key] = merged.get(key, 0) + v
        total += k
        if log:
            log(f"priced {done}/{len(jobs)} chunks: {total} cores, {len(merged)} tallies")

    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for done, (part, k) in enumerate(pool.map(_price_chunk, jobs), 1):
                absorb(part, k, done)
    else:
        for done, job in enumerate(jobs, 1):
            absorb(*_price_chunk(job), done)
    tallies = {((int(a), int(b), int(c)), int(n)): v for (a, b, c, n), v in sorted(merged.items())}
    return CoreTallies(d, tallies, total, len(reps))


# -- explicit cores, for cross-checks ------------------------------------------

def iter_cores(d: int):
    """Every core (as a flat column array) that the priced enumeration visits."""
    reps, ng, confs, rank = partial_cores(d)
    m = d - 1
    for rep in reps:
        prev = [int(x) for x in rep[:ng].ravel() if x]
        last = _group_rank(rep[ng - 1], confs, rank) if ng > 0 else 0
        for c in range(confs.shape[0]):
            if rank[c] < last:
                continue
            conf = [int(x) for x in confs[c] if x]
            if any(bin(p & q).count("1") > 1 for p in prev for q in conf):
                continue
            cols = rep.copy()
            cols[ng] = confs[c]
            yield cols.reshape(m * m)


def core_tally(cols: np.ndarray, m: int, pend_a, pend_b) -> tuple[tuple[int, int, int], int]:
    nA = 1 << m
    best = np.zeros((nA, nA), dtype=np.int64)
    count = np.zeros((nA, nA), dtype=np.int64)
    core_table(np.asarray(cols, dtype=np.int64), m, best, count)
    out = np.zeros(4, dtype=np.int64)
    _options_tally(best, count, np.asarray(pend_a, dtype=np.int64), np.asarray(pend_b, dtype=np.int64), m, out)
    return (int(out[0]), int(out[1]), int(out[2])), int(out[3])


def core_pattern(cols, m: int, pend_a, pend_b) -> Pattern:
    """The pattern described by a core and per-parent pendant counts.

    Vertex order: ``u, v``, then ``a_1..a_m``, ``b_1..b_m``, the used rows,
    the columns and finally the pendant leaves.
    """
    cols = [int(x) for x in cols]
    a = [2 + i for i in range(m)]
    b = [2 + m + j for j in range(m)]
    edges = [(0, 1)] + [(0, x) for x in a] + [(1, y) for y in b]
    n = 2 + 2 * m
    used = 0
    for x in cols:
        used |= x
    row_vertex = {}
    for r in range(m * m):
        if used >> r & 1:
            row_vertex[r] = n
            edges.append((a[r // m], n))
            n += 1
    for c, x in enumerate(cols):
        if not x:
            continue
        edges.append((b[c // m], n))
        for r in range(m * m):
            if x >> r & 1:
                edges.append((row_vertex[r], n))
        n += 1
    for parents, counts in ((a, pend_a), (b, pend_b)):
        for p, k in zip(parents, counts):
            for _ in range(int(k)):
                edges.append((p, n))
                n += 1
    return Pattern(Graph.from_edges(n, edges), (0, 1), 2)


def group_loads(cols, m: int) -> tuple[list[int], list[int]]:
    used = 0
    for x in cols:
        used |= int(x)
    load_a = [sum(1 for t in range(m) if used >> (i * m + t) & 1) for i in range(m)]
    load_b = [sum(1 for t in range(m) if cols[j * m + t]) for j in range(m)]
    return load_a, load_b
