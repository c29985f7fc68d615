from fractions import Fraction as F
from itertools import combinations_with_replacement

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hallratio.constraints import Constraint, prune
from hallratio.graph import SizeError
from hallratio.lp import check_certificate, solve_min
from hallratio.patterns import constraint_dp_edge, constraint_dp_vertex, tree_codes_edge, tree_codes_vertex
from hallratio.tree_lp import (
    build_tree_lp,
    root_children,
    root_count,
    screen_vertex_roots,
    solve_vertex_by_cuts,
    tree_constraints,
    vertex_root_tally,
)


def code_route(d: int, r: int, rooting: str) -> set[tuple[F, ...]]:
    if rooting == "vertex":
        return {constraint_dp_vertex(c, r).e for c in tree_codes_vertex(d, r)}
    return {constraint_dp_edge(a, b, r).e for a, b in tree_codes_edge(d, r)}


def lp_value(cs, d, r, rooting):
    return solve_min(build_tree_lp(prune(cs), d, r, rooting)).value


CASES = [(3, 2, "vertex"), (3, 3, "vertex"), (4, 2, "vertex"), (5, 2, "vertex"), (3, 2, "edge"), (3, 3, "edge"), (4, 2, "edge")]


@pytest.mark.parametrize("d, r, rooting", CASES)
def test_states_reproduce_tree_codes(d, r, rooting):
    assert {c.e for c in tree_constraints(d, r, rooting, collapse=False)} == code_route(d, r, rooting)


@pytest.mark.parametrize("d, r, rooting", CASES + [(4, 3, "vertex")])
def test_collapse_keeps_the_optimum(d, r, rooting):
    full = tree_constraints(d, r, rooting, collapse=False)
    small = tree_constraints(d, r, rooting, collapse=True)
    assert {c.e for c in small} <= {c.e for c in full}
    assert lp_value(small, d, r, rooting) == lp_value(full, d, r, rooting)


def test_root_count_matches_trees():
    assert root_count(3, 3, "vertex", collapse=False) == len(tree_codes_vertex(3, 3))
    assert root_count(4, 2, "edge", collapse=False) == len(tree_codes_edge(4, 2))


@settings(max_examples=15)
@given(st.lists(st.fractions(0, 1, max_denominator=20), min_size=4, max_size=4))
def test_screen_never_misses_a_violated_root(alpha):
    d, r = 3, 3
    pool, counts = root_children(d, r, "vertex")
    k = counts[0]
    hits = set(screen_vertex_roots(pool, k, r, alpha))
    for combo in combinations_with_replacement(range(len(pool)), k):
        e = Constraint.from_tally(vertex_root_tally([pool[i] for i in combo], r)).e
        value = sum(a * x for a, x in zip(alpha, e))
        if value < 1:
            assert combo in hits
        if combo in hits:
            assert value < 1 + F(1, 10**6)


@pytest.mark.parametrize("d, r, expected", [(3, 3, F(5849, 2228)), (4, 3, F(7083927, 2331392)), (3, 4, F(2098873192, 820777797))])
def test_cutting_planes_agree_with_full_listing(d, r, expected):
    res = solve_vertex_by_cuts(d, r, seed_rows=50, batch=200)
    assert res.solution.value == expected
    assert check_certificate(res.lp, res.solution) == []
    assert lp_value(tree_constraints(d, r, "vertex"), d, r, "vertex") == expected


def test_exact_limit():
    with pytest.raises(SizeError):
        tree_constraints(4, 4, "vertex", limit=1000)


def test_cubic_depth2_relative_rows():
    # the six rows that survive relative pruning, and the optimum they give
    kept = prune(tree_constraints(3, 2, "vertex"), "relative")
    assert sorted(c.e for c in kept) == sorted(
        tuple(map(F, row))
        for row in [(0, "5/2", "1/2"), (0, 2, 2), ("1/5", "8/5", "6/5"), ("1/3", 1, "8/3"), ("1/2", "1/2", 4), (1, 0, 3)]
    )
    sol = solve_min(build_tree_lp(kept, 3, 2, "vertex"))
    assert sol.value == F(85, 31) and sol.alpha == (F(19, 31), F(14, 31), F(4, 31))
