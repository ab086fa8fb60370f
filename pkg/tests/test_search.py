import itertools

import numpy as np
import pytest

from qimet.correspondence import Correspondence, MapPair, qdis_cost
from qimet.errors import BudgetExceeded
from qimet.ghdist import gh_objective
from qimet.propsuite import random_space
from qimet.qidist import qhat_objective
from qimet.search import (
    MapPairObjective,
    PairCostObjective,
    SearchBudget,
    all_maps,
    enumerate_correspondences,
    enumerate_map_pairs,
    iter_map_pairs,
    local_search_map_pairs,
    map_pair_count,
)


class Counter:
    """Generic score that records every map pair it sees."""

    def __init__(self, fn=lambda item: 0.0):
        self.seen = []
        self.fn = fn

    def __call__(self, item):
        self.seen.append(item)
        return self.fn(item)


def brute_force_correspondence_count(n_x, n_y):
    cells = list(itertools.product(range(n_x), range(n_y)))
    count = 0
    for k in range(1, len(cells) + 1):
        for sub in itertools.combinations(cells, k):
            if {x for x, _ in sub} == set(range(n_x)) and {y for _, y in sub} == set(range(n_y)):
                count += 1
    return count


@pytest.mark.parametrize("n_x, n_y, expected", [(1, 1, 1), (2, 2, 16), (3, 3, 729), (2, 3, 72)])
def test_map_pair_counts(n_x, n_y, expected):
    assert map_pair_count(n_x, n_y) == expected
    counter = Counter()
    res = enumerate_map_pairs(n_x, n_y, counter)
    assert len(counter.seen) == expected == res.evaluations_used
    assert len(set(counter.seen)) == expected


def test_single_pair_returns_its_score():
    res = enumerate_map_pairs(1, 1, Counter(lambda mp: 4.5))
    assert res.best_value == 4.5
    assert res.best_witness == MapPair([0], [0])
    assert res.certified_exact


@pytest.mark.parametrize("n_x, n_y", [(1, 1), (1, 2), (2, 2), (2, 3)])
def test_correspondence_counts_match_brute_force(n_x, n_y):
    counter = Counter()
    res = enumerate_correspondences(n_x, n_y, counter)
    expected = brute_force_correspondence_count(n_x, n_y)
    assert res.evaluations_used == len(counter.seen) == expected


def test_correspondence_known_counts():
    assert brute_force_correspondence_count(2, 2) == 7
    counter = Counter()
    enumerate_correspondences(1, 2, counter)
    assert counter.seen == [Correspondence(1, 2, [(0, 0), (0, 1)])]


def test_budget_exceeded():
    with pytest.raises(BudgetExceeded) as exc:
        enumerate_map_pairs(3, 3, Counter(), cap=728)
    assert exc.value.required == 729 and exc.value.cap == 728
    with pytest.raises(BudgetExceeded):
        enumerate_correspondences(3, 3, Counter(), max_bits=8)


def test_all_maps_lexicographic():
    maps = all_maps(2, 3)
    assert [tuple(m) for m in maps] == list(itertools.product(range(3), repeat=2))
    assert [mp for mp in iter_map_pairs(2, 2)][:2] == [MapPair([0, 0], [0, 0]), MapPair([0, 0], [0, 1])]


@pytest.mark.parametrize("seed", range(5))
@pytest.mark.parametrize("make", [gh_objective, qhat_objective])
def test_vectorised_enumeration_matches_generic_loop(seed, make):
    X = random_space(3, seed)
    Y = random_space(2, seed + 100)
    obj = make(X, Y)
    fast = enumerate_map_pairs(X.n, Y.n, obj)
    slow = enumerate_map_pairs(X.n, Y.n, lambda mp: obj(mp))
    assert fast.best_value == slow.best_value
    assert fast.best_witness == slow.best_witness


def test_pair_cost_objective_matches_definition(rng):
    X, Y = random_space(3, 1), random_space(2, 2)
    obj = PairCostObjective.from_pair_cost(qdis_cost, X.dist, Y.dist)
    R = Correspondence(3, 2, [(0, 0), (1, 1), (2, 0), (2, 1)])
    expected = max(qdis_cost(X.dist[x, x2], Y.dist[y, y2]) for x, y in R.pairs for x2, y2 in R.pairs)
    assert obj(R) == pytest.approx(expected, abs=1e-15)


def test_map_pair_objective_shapes():
    with pytest.raises(ValueError):
        MapPairObjective(np.zeros((2, 2, 3, 3)), np.zeros((3, 3, 2, 2)), np.zeros((2, 2, 3, 3)))


def test_search_is_deterministic():
    X, Y = random_space(4, 3), random_space(4, 4)
    obj = qhat_objective(X, Y)
    b = SearchBudget(max_evaluations=2000, restarts=5, rng_seed=9)
    r1 = local_search_map_pairs(4, 4, obj, b)
    r2 = local_search_map_pairs(4, 4, obj, b)
    assert r1 == r2


def test_search_reports_budget_and_flags():
    obj = gh_objective(random_space(3, 0), random_space(3, 1))
    b = SearchBudget(max_evaluations=100, restarts=3)
    res = local_search_map_pairs(3, 3, obj, b)
    assert res.evaluations_used == 300
    assert not res.certified_exact
    assert res.best_value == pytest.approx(obj(res.best_witness), abs=0)


@pytest.mark.parametrize("seed", range(10))
def test_search_never_beats_exact(seed):
    X, Y = random_space(3, seed), random_space(3, seed + 50)
    obj = qhat_objective(X, Y)
    exact = enumerate_map_pairs(3, 3, obj).best_value
    found = local_search_map_pairs(3, 3, obj, SearchBudget(max_evaluations=50, restarts=2, rng_seed=seed))
    assert found.best_value >= exact


def test_generic_score_annealing_matches_structured():
    X, Y = random_space(3, 7), random_space(3, 8)
    obj = gh_objective(X, Y)
    b = SearchBudget(max_evaluations=300, restarts=2, rng_seed=1)
    fast = local_search_map_pairs(3, 3, obj, b)
    slow = local_search_map_pairs(3, 3, lambda mp: obj(mp), b)
    assert fast.best_value == slow.best_value


@pytest.mark.parametrize("kwargs", [
    {"max_evaluations": 0}, {"restarts": 0}, {"cooling_rate": 1.0}, {"initial_temperature": -1},
])
def test_budget_validation(kwargs):
    with pytest.raises(ValueError):
        SearchBudget(**kwargs)
