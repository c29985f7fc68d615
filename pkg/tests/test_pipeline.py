import json
import math
from fractions import Fraction as F

import pytest

from hallratio.constraints import Constraint
from hallratio.graph import SizeError
from hallratio.pipeline import PipelineConfig, check_rows, hall_ratio, solve_family

INF = math.inf


@pytest.mark.parametrize(
    "d, g, r, rooting, value, method",
    [
        (3, INF, 2, "vertex", F(85, 31), "tree-states"),
        (3, 6, 2, "vertex", F(85, 31), "tree-states"),
        (3, INF, 2, "edge", F(30, 11), "tree-states"),
        (3, 7, 2, "edge", F(30, 11), "tree-states"),
        (3, 6, 2, "edge", F(30, 11), "bipartite-cores"),
        (3, 4, 2, "vertex", F(41, 14), "nauty-cores"),
        (3, 5, 2, "edge", F(3), "nauty-cores"),
    ],
)
def test_values_and_engines(d, g, r, rooting, value, method):
    res = hall_ratio(d, g, r, rooting)
    assert (res.value, res.method) == (value, method)
    assert res.ok and res.certified


def test_girth_only_weakens_the_bound():
    # smaller girth admits more patterns, hence more rows and a larger optimum
    values = [hall_ratio(3, g, 2, "vertex").value for g in (4, 5, 6)]
    assert values == sorted(values, reverse=True)


def test_edge_rooted_depth3_at_girth8_is_not_certified():
    res = hall_ratio(3, 8, 3, "edge")
    assert res.value == F(125, 48)
    assert not res.certified and "acyclic optimum" in res.note
    assert hall_ratio(3, 9, 3, "edge").certified


def test_cyclic_vertex_rooted_depth3_is_refused():
    with pytest.raises(SizeError):
        hall_ratio(3, 7, 3, "vertex")


def test_relative_pruning_agrees_with_weaker():
    for d, r, rooting in [(3, 3, "vertex"), (4, 2, "edge")]:
        weak = hall_ratio(d, INF, r, rooting)
        rel = hall_ratio(d, INF, r, rooting, PipelineConfig(prune_mode="relative"))
        assert rel.value == weak.value
        assert rel.kept <= weak.kept


def test_relative_pruning_falls_back_when_alpha_increases():
    # both rows are met by alpha = (0, 1), which is increasing
    cs = [Constraint.of((0, 1), 1), Constraint.of((1, 1), 1)]
    lp, sol, kept, mode = solve_family(cs, 3, 1, "vertex", "relative")
    assert mode == "weaker"
    assert sol.value == 3 and sol.alpha == (0, 1)


def test_check_rows_reports_violations():
    assert check_rows((F(1), F(0)), [Constraint.of((1, 0), 1)]) == []
    assert check_rows((F(1, 2), F(0)), [Constraint.of((1, 0), 1)])


def test_json_is_deterministic():
    a = hall_ratio(3, INF, 3, "edge").to_json()
    b = hall_ratio(3, INF, 3, "edge").to_json()
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
    assert "seconds" not in a
    assert a["value"] == "125/48" and a["g"] == "inf"


def test_arguments_validated():
    with pytest.raises(ValueError):
        hall_ratio(3, INF, 2, "face")
    with pytest.raises(ValueError):
        hall_ratio(1, INF, 2, "vertex")
    with pytest.raises(ValueError):
        hall_ratio(3, 3, 2, "vertex")


def test_girth6_edge_beyond_degree_cap():
    with pytest.raises(SizeError):
        hall_ratio(5, 6, 2, "edge")
