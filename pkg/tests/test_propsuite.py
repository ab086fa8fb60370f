import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qimet.correspondence import Correspondence, MapPair
from qimet.metricspace import validate
from qimet.propsuite import (
    SUITES,
    SuiteReport,
    metric_closure,
    oracle_min_r_bisect,
    oracle_qdis_bisect,
    qi_feasible,
    random_correspondence,
    random_map_pair,
    random_space,
    run_suite,
)

from conftest import space_pairs_with_maps


def test_random_space_single_point():
    s = random_space(1, 0)
    assert s.n == 1 and s.dist[0, 0] == 0


@given(st.integers(1, 7), st.integers(0, 2**32 - 1))
@settings(max_examples=60, deadline=None)
def test_random_space_valid_and_repair_is_fixed_point(n, seed):
    s = random_space(n, seed)
    validate(s.dist)
    assert np.array_equal(metric_closure(s.dist), s.dist)
    assert s.dist.max() <= 4.0


def test_random_space_deterministic():
    assert random_space(5, 7) == random_space(5, 7)
    assert random_space(5, 7) != random_space(5, 8)


def test_slack_makes_triangles_strict():
    s = random_space(5, 3, slack=0.1)
    d = s.dist
    n = s.n
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if len({i, j, k}) == 3:
                    assert d[i, j] < d[i, k] + d[k, j]


def test_random_space_rejects_bad_range():
    with pytest.raises(ValueError):
        random_space(3, 0, lo=0)
    with pytest.raises(ValueError):
        random_space(0, 0)


def test_random_correspondence_is_valid():
    R = random_correspondence(4, 3, 0)
    assert R.mask.any(axis=1).all() and R.mask.any(axis=0).all()
    mp = random_map_pair(4, 3, 1)
    assert mp.n_x == 4 and mp.n_y == 3


def test_oracles_identity():
    X = random_space(4, 0)
    assert oracle_qdis_bisect(Correspondence.diagonal(4), X, X) == 0
    assert oracle_min_r_bisect(MapPair.identity(4), X, X) == 0
    with pytest.raises(ValueError):
        oracle_qdis_bisect(Correspondence.diagonal(4), X, X, tol=0)


@given(space_pairs_with_maps(), st.floats(0, 5), st.floats(0, 5))
@settings(max_examples=60, deadline=None)
def test_qi_feasibility_is_monotone(case, r, extra):
    X, Y, mp = case
    if qi_feasible(mp, X, Y, r):
        assert qi_feasible(mp, X, Y, r + extra)


def test_suite_report():
    rep = SuiteReport("x")
    assert not rep.ok
    rep.check(0.5)
    rep.check(-0.1, "bad")
    assert rep.trials == 2 and rep.passed == 1 and rep.failed == 1
    assert rep.worst_slack == -0.1
    assert rep.to_dict()["failures"] == [{"slack": -0.1, "info": "bad"}]


@pytest.mark.parametrize("name", sorted(set(SUITES) - {"search_calibration"}))
def test_every_suite_passes_small(name):
    rep = run_suite(name, trials=5, seed=1)
    assert rep.ok, rep.failures


def test_suites_are_deterministic():
    a = run_suite("bounds", trials=10, seed=3).to_dict()
    b = run_suite("bounds", trials=10, seed=3).to_dict()
    assert a == b


def test_search_calibration_hits_95_of_100():
    rep = run_suite("search_calibration", trials=100, seed=0)
    assert rep.ok, rep.failures
