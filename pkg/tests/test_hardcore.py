import math
import random
from fractions import Fraction as F

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from hallratio.corpus import random_region
from hallratio.graph import Graph, _to_mask, path, star
from hallratio.hardcore import (
    FACT1_CAP,
    PreconditionError,
    fact1_value,
    hardcore_law,
    occupancy,
    star_occupancy_closed_form,
    verify_local_inequality,
    verify_spatial_markov,
)
from test_graph import graphs

fugacities = st.sampled_from([F(1, 3), F(1, 2), F(1), F(2), F(4)])


def test_path_occupancy_by_hand():
    # independent sets of P3 at lambda = 1: {}, {0}, {1}, {2}, {0, 2}
    occ = occupancy(path(3), "all", F(1))
    assert occ.partition == 5
    assert occ.p_in == (F(2, 5), F(1, 5), F(2, 5))
    assert occ.exp_nbr == (F(1, 5), F(4, 5), F(1, 5))
    assert occupancy(path(3), "maximal", F(1)).p_in == (F(1, 2), F(1, 2), F(1, 2))
    assert occupancy(path(3), "maximum", math.inf).p_in == (1, 0, 1)


@given(graphs(), st.sampled_from(["all", "maximal", "maximum"]), fugacities)
def test_law_is_a_distribution_on_independent_sets(g, family, lam):
    law = hardcore_law(g.masks, (1 << g.n) - 1, family, lam)
    assert sum(law.values()) == 1
    assert all(g.is_independent(v for v in range(g.n) if s >> v & 1) for s in law)


@given(st.integers(0, 6), fugacities)
def test_star_closed_form(d, lam):
    occ = occupancy(star(d), "all", lam)
    assert star_occupancy_closed_form(d, lam) == (occ.p_in[0], occ.exp_nbr[0])


@pytest.mark.parametrize("family, lam", [("all", math.inf), ("maximal", math.inf), ("all", F(0)), ("nope", F(1))])
def test_bad_family_or_fugacity(family, lam):
    with pytest.raises(ValueError):
        occupancy(path(3), family, lam)


@given(graphs(max_n=8), st.randoms(use_true_random=False), fugacities)
def test_spatial_markov_all_sets(g, rng, lam):
    assume(g.n > 0)
    assert verify_spatial_markov(g, random_region(g, rng, star=False), "all", lam).discrepancy == 0


@given(graphs(max_n=8), st.randoms(use_true_random=False), fugacities)
def test_spatial_markov_maximal_sets(g, rng, lam):
    assume(g.n > 0)
    assert verify_spatial_markov(g, random_region(g, rng, star=True), "maximal", lam).discrepancy == 0


def test_maximal_needs_the_star_condition():
    with pytest.raises(PreconditionError):
        verify_spatial_markov(path(3), [0, 2], "maximal", F(1))


def test_plain_region_is_wrong_for_maximal_sets():
    # path 0-1-2 with X = {0}: given I - X = {2}, maximality forces 0 in, while
    # the all-sets law on X - N(J) = {0} would leave it out half the time
    g = path(3)
    law = hardcore_law(g.masks, 0b111, "maximal", F(1))
    assert {s & 1 for s in law if s & ~1 == 0b100} == {1}
    assert verify_spatial_markov(g, [0], "maximal", F(1)).ok
    assert hardcore_law(g.masks, 0b001, "all", F(1)) == {0: F(1, 2), 1: F(1, 2)}


def test_local_inequality_on_a_clique():
    ok, lhs = verify_local_inequality(Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)]), 0, F(2), F(1, 2), "maximum", math.inf)
    assert ok and lhs == 1


def test_fact1_is_non_increasing():
    vals = [fact1_value(lam, 2) for lam in (1, 2, 4, 8, 16)]
    assert vals == sorted(vals, reverse=True)
    assert fact1_value(4, 2) == pytest.approx(float(FACT1_CAP))


def test_markov_corpus_instances_are_nontrivial():
    rng = random.Random(0)
    g = Graph.from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)])
    x = random_region(g, rng, star=True)
    assert verify_spatial_markov(g, x, "maximal", F(4)).outcomes > 1
    assert _to_mask(x)
