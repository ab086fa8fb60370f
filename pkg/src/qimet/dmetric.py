"""The metric D: least quasi-isometric distortion over all correspondences.

Every correspondence contains the union of the graph of some ``f: X -> Y``
and the transposed graph of some ``g: Y -> X``, and q-dis can only drop
when pairs are removed, so the minimum over map-pair unions is the minimum
over all correspondences.
"""

from __future__ import annotations

import math

from .correspondence import Correspondence, compose, qdis_cost, union_correspondence
from .search import (
    DEFAULT_CAP,
    MapPairObjective,
    PairCostObjective,
    SearchBudget,
    SearchResult,
    enumerate_correspondences,
    enumerate_map_pairs,
    local_search_map_pairs,
)


def d_objective(X, Y) -> MapPairObjective:
    return MapPairObjective.from_pair_cost(qdis_cost, X.dist, Y.dist)


def solve_d(X, Y, budget: SearchBudget | None = None, cap: int = DEFAULT_CAP, threads: int = 1) -> SearchResult:
    """D with the optimal correspondence as witness (exact unless a budget is given)."""
    obj = d_objective(X, Y)
    if budget is None:
        res = enumerate_map_pairs(X.n, Y.n, obj, cap=cap, threads=threads)
    else:
        res = local_search_map_pairs(X.n, Y.n, obj, budget, threads=threads)
    return SearchResult(res.best_value, union_correspondence(res.best_witness),
                        res.evaluations_used, res.certified_exact)


def d_exact(X, Y, cap: int = DEFAULT_CAP) -> float:
    return solve_d(X, Y, cap=cap).best_value


def d_search(X, Y, budget: SearchBudget) -> float:
    return solve_d(X, Y, budget).best_value


def d_exact_subsets(X, Y, max_bits: int = 9) -> float:
    """Minimum of q-dis over every correspondence. Slow reference path."""
    obj = PairCostObjective.from_pair_cost(qdis_cost, X.dist, Y.dist)
    return enumerate_correspondences(X.n, Y.n, obj, max_bits=max_bits).best_value


def compose_correspondences(R: Correspondence, S: Correspondence) -> Correspondence:
    return compose(R, S)


def bound_d_from_qhat(r: float) -> float:
    """Upper bound on D given the quasi-isometric distance ``r``."""
    return math.log1p(2 * r)


def bound_qhat_from_d(r: float) -> float:
    """Upper bound on the quasi-isometric distance given ``D = r``."""
    return math.exp(2 * r) - math.exp(r)
