from fractions import Fraction as F

import pytest

from hallratio.catalog import ENTRIES, catalog, circulant, entry, generalized_petersen
from hallratio.graph import girth, independence_number, to_graph6, parse_graph6


@pytest.mark.parametrize("name", sorted(ENTRIES))
def test_recorded_statistics(name):
    assert ENTRIES[name].check() == []


def test_ratios():
    got = {name: e.ratio for name, e in ENTRIES.items()}
    assert got == {
        "fajtlowicz": F(14, 5), "locke": F(14, 5), "jones13": F(13, 4),
        "circ20": F(10, 3), "circ29": F(29, 8), "petersen": F(5, 2),
    }


def test_aliases_and_unknown_names():
    assert catalog("gp52") == catalog("petersen")
    assert entry("gp72").name == "fajtlowicz"
    with pytest.raises(KeyError):
        catalog("heawood")


def test_builders():
    c = circulant(8, (1, -1))
    assert c.is_regular() and c.max_degree == 2 and girth(c) == 8
    gp = generalized_petersen(5, 2)
    assert (gp.n, gp.max_degree, girth(gp), independence_number(gp)) == (10, 3, 5, 4)


def test_catalog_graphs_survive_graph6():
    for name in ENTRIES:
        g = catalog(name)
        assert parse_graph6(to_graph6(g)) == g
