import random
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hallratio.constraints import (
    Constraint,
    join,
    plus,
    prune,
    tally_join,
    tally_key,
    tally_plus,
)
from hallratio.graph import Graph, SizeError, path
from hallratio.patterns import (
    Pattern,
    collapse_pendants,
    constraint_bruteforce,
    constraint_dp_edge,
    constraint_dp_vertex,
    decode_edge,
    decode_vertex,
    enumerate_tree_patterns_vertex,
    pattern_tally,
    tree_codes_edge,
    tree_codes_vertex,
)

tallies = st.tuples(st.lists(st.integers(0, 40), min_size=3, max_size=3).map(tuple), st.integers(1, 9))


# -- constraint algebra ----------------------------------------------------------

def test_join_prefers_larger_norm_and_averages_ties():
    a = Constraint.of([0, 3], 1)
    b = Constraint.of([1, 1], 2)
    assert join(a, b) == a
    c = Constraint.of([1, 2], 3)
    assert join(a, c) == Constraint.of([F(3, 4), F(9, 4)], 4)


def test_plus_adds_vectors_and_multiplies_counts():
    assert plus(Constraint.of([1, 2], 2), Constraint.of([F(1, 3), 0], 3)) == Constraint.of([F(4, 3), 2], 6)


def test_length_mismatch_rejected():
    with pytest.raises(ValueError):
        join(Constraint.of([1], 1), Constraint.of([1, 2], 1))


@given(tallies, tallies)
def test_tally_operations_mirror_constraints(a, b):
    ca, cb = Constraint.from_tally(a), Constraint.from_tally(b)
    assert Constraint.from_tally(tally_plus(a, b)) == plus(ca, cb)
    assert Constraint.from_tally(tally_join(a, b)) == join(ca, cb)


@given(tallies)
def test_tally_key_ignores_scaling(a):
    s, n = a
    assert tally_key(a) == tally_key((tuple(3 * x for x in s), 3 * n))


def test_constraint_json_round_trip():
    c = Constraint.of([F(5, 2), F(1, 3)], 6)
    assert Constraint.from_json(c.to_json()) == c


# -- pruning --------------------------------------------------------------------------

def test_prune_drops_dominated_and_duplicates():
    cs = [Constraint.of(e, n) for e, n in [((1, 2), 1), ((1, 3), 1), ((1, 2), 5), ((2, 1), 1)]]
    kept = prune(cs)
    assert {c.e for c in kept} == {(1, 2), (2, 1)}
    assert next(c for c in kept if c.e == (1, 2)).n == 1


def test_relative_prune_uses_prefix_sums():
    # prefix sums (1, 3) <= (2, 3): (2, 1) is implied for non-increasing alpha only
    cs = [Constraint.of((2, 1), 1), Constraint.of((1, 2), 1)]
    assert len(prune(cs, "weaker")) == 2
    assert [c.e for c in prune(cs, "relative")] == [(1, 2)]


vectors = st.lists(st.fractions(0, 4, max_denominator=6), min_size=3, max_size=3)


@given(st.lists(vectors, min_size=1, max_size=25), st.lists(st.floats(0, 1), min_size=3, max_size=3), st.booleans())
def test_pruning_preserves_minimum(vs, alpha, relative):
    cs = [Constraint.of(v, 1) for v in vs]
    if relative:
        alpha = sorted(alpha, reverse=True)
    kept = prune(cs, "relative" if relative else "weaker")
    a = [F(x) for x in alpha]
    value = lambda c: sum(x * y for x, y in zip(a, c.e))
    assert min(map(value, kept)) == min(map(value, cs))


# -- tree enumeration -------------------------------------------------------------------

# counts derived by hand: multisets of child types at every level
@pytest.mark.parametrize(
    "d, r, vertex, edge",
    [(3, 1, 4, 6), (3, 2, 10, 21), (3, 3, 56, 231), (4, 2, 35, 210), (2, 2, 3, 3)],
)
def test_tree_family_sizes(d, r, vertex, edge):
    assert len(tree_codes_vertex(d, r)) == vertex
    assert len(tree_codes_edge(d, r)) == edge


def test_tree_patterns_are_regular_and_distinct():
    ps = enumerate_tree_patterns_vertex(3, 3)
    assert all(p.is_regular_pattern(3) for p in ps)
    assert len({p.dumps() for p in ps}) == len(ps)


def test_budget_is_enforced():
    with pytest.raises(SizeError):
        tree_codes_vertex(4, 3, budget=100)


# -- constraints of patterns ------------------------------------------------------------

def test_hand_computed_constraints():
    star3 = Pattern(Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)]), (0,), 1)
    assert constraint_bruteforce(star3) == Constraint.of([0, 3], 1)
    # path a-u-v-b rooted at the edge uv: maximum sets {a,v}, {a,b}, {u,b}
    p4 = Pattern(path(4), (1, 2), 1)
    assert constraint_bruteforce(p4) == Constraint.of([F(2, 3), F(4, 3)], 3)


@pytest.mark.parametrize("d, r", [(3, 2), (3, 3), (4, 2)])
def test_dp_matches_brute_force_vertex(d, r):
    for code in tree_codes_vertex(d, r):
        assert constraint_dp_vertex(code, r) == constraint_bruteforce(decode_vertex(code, r))


@pytest.mark.parametrize("d, r", [(3, 2), (3, 3), (4, 2)])
def test_dp_matches_brute_force_edge(d, r):
    for cu, cv in tree_codes_edge(d, r):
        assert constraint_dp_edge(cu, cv, r) == constraint_bruteforce(decode_edge(cu, cv, r))


def test_enumerate_and_count_agree():
    rng = random.Random(2)
    for code in rng.sample(tree_codes_vertex(4, 3), 40):
        p = decode_vertex(code, 3)
        if p.graph.n <= 30:
            assert pattern_tally(p, "enumerate") == pattern_tally(p, "count")


@pytest.mark.parametrize("d, r", [(4, 2), (5, 2), (4, 3)])
def test_collapse_only_drops_forced_leaves(d, r):
    for code in tree_codes_vertex(d, r)[:300]:
        p = decode_vertex(code, r)
        q = collapse_pendants(p)
        full, small = constraint_bruteforce(p), constraint_bruteforce(q)
        dropped = p.graph.n - q.graph.n
        assert full.e[:-1] == small.e[:-1]
        assert full.e[-1] == small.e[-1] + dropped


def test_pattern_json_round_trip():
    p = decode_edge(*tree_codes_edge(3, 2)[5], 2)
    assert Pattern.from_json(p.to_json()) == p


def test_pattern_rejects_far_vertices():
    with pytest.raises(ValueError):
        Pattern(path(4), (0,), 2)
