"""Deterministic random graph corpora for the verification suites."""

from __future__ import annotations

import random

from .graph import Graph, girth


def random_girth_graph(n: int, g: int, rng: random.Random, tries: int = 400, max_degree: int | None = None) -> Graph:
    """Random edge additions that keep the girth at least ``g``."""
    edges: list[tuple[int, int]] = []
    present: set[tuple[int, int]] = set()
    deg = [0] * n
    current = Graph.from_edges(n, [])
    for _ in range(tries):
        u, v = rng.sample(range(n), 2)
        e = (min(u, v), max(u, v))
        if e in present:
            continue
        if max_degree is not None and max(deg[u], deg[v]) >= max_degree:
            continue
        trial = Graph.from_edges(n, edges + [e])
        if girth(trial) >= g:
            edges.append(e)
            present.add(e)
            deg[u] += 1
            deg[v] += 1
            current = trial
    return current


def girth7_corpus(count: int = 12, seed: int = 7, n_range: tuple[int, int] = (8, 20)) -> list[Graph]:
    rng = random.Random(seed)
    return [random_girth_graph(rng.randint(*n_range), 7, rng) for _ in range(count)]


def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def random_region(g: Graph, rng: random.Random, star: bool) -> list[int]:
    """A random vertex subset; with ``star`` every outside vertex sees at most one of it."""
    order = list(range(g.n))
    rng.shuffle(order)
    if not star:
        return sorted(v for v in order if rng.random() < 0.4) or [order[0]]
    chosen: set[int] = set()
    target = rng.randint(1, max(1, g.n // 2))
    for v in order:
        if len(chosen) >= target:
            break
        trial = chosen | {v}
        if all(sum(1 for u in g.adj[w] if u in trial) <= 1 for w in range(g.n) if w not in trial):
            chosen = trial
    return sorted(chosen)


def markov_corpus(count: int = 50, seed: int = 11, star: bool = False, n_range: tuple[int, int] = (4, 12)) -> list[tuple[Graph, list[int]]]:
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        g = random_graph(rng.randint(*n_range), rng.uniform(0.15, 0.5), rng)
        out.append((g, random_region(g, rng, star)))
    return out
