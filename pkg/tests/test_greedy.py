from fractions import Fraction as F

import pytest
from hypothesis import assume, given

from hallratio.bounds import girth7_f
from hallratio.catalog import catalog
from hallratio.corpus import girth7_corpus
from hallratio.graph import Graph, complete, cycle, girth
from hallratio.greedy import (
    FractionalColouring,
    GreedyParams,
    HypothesisError,
    build_lembest,
    clique_params,
    coefficients_girth7,
    coefficients_triangle_free,
    girth7_params,
    greedy_fractional,
    triangle_free_params,
    verify_fractional_colouring,
)
from test_graph import graphs


@pytest.mark.parametrize("d", range(1, 6))
def test_lembest_totals(d):
    g = build_lembest(d)
    assert g.max_degree == d
    fc = greedy_fractional(g, clique_params(g))
    assert fc.total == F(d + 3, 2)
    assert verify_fractional_colouring(g, fc, F(d + 3, 2)).ok


def test_coefficients():
    assert coefficients_triangle_free(2, F(1)) == (F(7, 3), F(2, 3))
    assert coefficients_triangle_free(2, float("inf")) == (F(3, 2), F(1, 2))
    assert coefficients_girth7(4) == (F(3, 2), F(1, 2))
    with pytest.raises(ValueError):
        coefficients_girth7(3)


@given(graphs(max_n=8))
def test_clique_coefficients_hold_on_any_graph(g):
    assume(g.n > 0)
    params = clique_params(g)
    fc = greedy_fractional(g, params)
    assert verify_fractional_colouring(g, fc, params.local_budget(g)).ok


@given(graphs(max_n=8))
def test_triangle_free_coefficients(g):
    assume(g.n > 0 and girth(g) > 3)
    params = triangle_free_params(g, 3, F(1))
    fc = greedy_fractional(g, params)
    assert verify_fractional_colouring(g, fc, params.budget(g)).ok


def test_hypothesis_failure_is_reported():
    g = complete(4)
    with pytest.raises(HypothesisError) as info:
        greedy_fractional(g, triangle_free_params(g, 2, F(1)))
    assert info.value.lhs == F(13, 15)


def test_girth7_corpus_within_bound():
    for g in girth7_corpus(4):
        assert girth(g) >= 7
        params = girth7_params(g)
        fc = greedy_fractional(g, params)
        assert verify_fractional_colouring(g, fc, params.local_budget(g)).ok
        assert fc.total <= girth7_f(g.max_degree)[0]


def test_petersen_with_girth7_coefficients():
    g = catalog("petersen")
    fc = greedy_fractional(g, girth7_params(g))
    assert fc.total == F(30, 11)


def test_verifier_catches_bad_colourings():
    g = cycle(5)
    fc = FractionalColouring(5)
    fc.add(frozenset({0, 1}), F(1))
    rep = verify_fractional_colouring(g, fc)
    assert not rep.ok
    assert any("not independent" in v for v in rep.violations)
    assert any("covered only" in v for v in rep.violations)


def test_parameters_validated():
    g = Graph.from_edges(2, [(0, 1)])
    with pytest.raises(ValueError):
        GreedyParams("all", float("inf"), (F(1),) * 2, (F(1),) * 2)
    with pytest.raises(ValueError):
        greedy_fractional(g, GreedyParams("all", F(1), (F(1),), (F(1),)))
