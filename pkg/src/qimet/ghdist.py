"""Gromov-Hausdorff distance between finite metric spaces, epsilon-isometries
and the finite pointed-convergence predicate."""

from __future__ import annotations

import numpy as np

from .correspondence import _check_map, dis_map
from .errors import BudgetExceeded
from .metricspace import FiniteMetricSpace, PointedSpace, diameter
from .search import (
    DEFAULT_CAP,
    MapPairObjective,
    PairCostObjective,
    SearchBudget,
    SearchResult,
    all_maps,
    enumerate_correspondences,
    enumerate_map_pairs,
    local_search_map_pairs,
)


def _abs_diff(a, b):
    return np.abs(a - b)


def gh_objective(X: FiniteMetricSpace, Y: FiniteMetricSpace) -> MapPairObjective:
    """``max{dis f, dis g, coupling(f, g)}``, the distortion of the union correspondence."""
    return MapPairObjective.from_pair_cost(_abs_diff, X.dist, Y.dist)


def solve_gh(X, Y, budget: SearchBudget | None = None, cap: int = DEFAULT_CAP, threads: int = 1) -> SearchResult:
    """GH distance with a witnessing map pair.

    Without a budget the minimum over all map pairs is exact; with one it is
    an annealing upper bound. ``best_value`` is already halved.
    """
    obj = gh_objective(X, Y)
    if budget is None:
        res = enumerate_map_pairs(X.n, Y.n, obj, cap=cap, threads=threads)
    else:
        res = local_search_map_pairs(X.n, Y.n, obj, budget, threads=threads)
    return SearchResult(res.best_value / 2, res.best_witness, res.evaluations_used, res.certified_exact)


def gh_exact(X, Y, cap: int = DEFAULT_CAP) -> float:
    return solve_gh(X, Y, cap=cap).best_value


def gh_search(X, Y, budget: SearchBudget) -> float:
    return solve_gh(X, Y, budget).best_value


def gh_exact_subsets(X, Y, max_bits: int = 9) -> float:
    """Half the minimal distortion over every correspondence. Slow reference path."""
    obj = PairCostObjective.from_pair_cost(_abs_diff, X.dist, Y.dist)
    return enumerate_correspondences(X.n, Y.n, obj, max_bits=max_bits).best_value / 2


def gh_lower_bound_diam(X, Y) -> float:
    return abs(diameter(X) - diameter(Y)) / 2


def net_radius(f, X, Y) -> float:
    """How far the farthest point of ``Y`` is from the image of ``f``."""
    f = _check_map(f, X, Y)
    return float(Y.dist[np.unique(f)].min(axis=0).max())


def eps_isometry_check(f, X, Y, eps: float) -> bool:
    """True iff ``dis f <= eps`` and ``f(X)`` is an ``eps``-net in ``Y``."""
    if not eps > 0:
        raise ValueError("eps must be positive")
    return dis_map(f, X, Y) <= eps and net_radius(f, X, Y) <= eps


def best_eps_isometry(X, Y, cap: int = DEFAULT_CAP):
    """Smallest ``eps`` for which some map ``X -> Y`` is an ``eps``-isometry, and that map.

    Exhaustive over all ``Y.n ** X.n`` maps.
    """
    total = Y.n**X.n
    if total > cap:
        raise BudgetExceeded(total, cap)
    fs = all_maps(X.n, Y.n)
    value = np.zeros(len(fs))
    for a in range(X.n):
        for b in range(a + 1, X.n):
            np.maximum(value, np.abs(X.dist[a, b] - Y.dist[fs[:, a], fs[:, b]]), out=value)
    # distance from every y to the image, per map
    near = Y.dist[fs].min(axis=1)
    np.maximum(value, near.max(axis=1), out=value)
    k = int(np.argmin(value))
    return float(value[k]), fs[k]


def find_eps_isometry(X, Y, eps: float, cap: int = DEFAULT_CAP):
    """An ``eps``-isometry ``X -> Y`` as an index array, or ``None`` if none exists."""
    value, f = best_eps_isometry(X, Y, cap)
    return f if value <= eps else None


def closed_ball(s: FiniteMetricSpace, center: int, radius: float) -> np.ndarray:
    return np.flatnonzero(s.dist[center] <= radius)


def pointed_gh_check(Xp: PointedSpace, Yp: PointedSpace, r: float, eps: float, cap: int = DEFAULT_CAP) -> bool:
    """Is there ``f`` on the closed ball ``U_r`` around ``Xp``'s base with the three
    pointed-convergence conditions?

    Those are: ``f`` sends base to base, ``dis f < eps``, and every point of
    ``Y`` within ``r - eps`` of its base lies within ``eps`` of the image.
    Decided by depth-first search over maps of the ball with distortion
    pruning; ``cap`` bounds the number of partial assignments tried.
    """
    if not r > eps > 0:
        raise ValueError("need r > eps > 0")
    X, Y = Xp.space, Yp.space
    ball = closed_ball(X, Xp.base, r)
    ball = np.concatenate([[Xp.base], ball[ball != Xp.base]])
    target = closed_ball(Y, Yp.base, r - eps)
    dx = X.dist[np.ix_(ball, ball)]
    dy = Y.dist
    m = len(ball)
    image = np.full(m, -1)
    image[0] = Yp.base
    steps = 0

    def covered():
        return bool((dy[np.ix_(target, image)].min(axis=1) <= eps).all())

    def extend(k):
        nonlocal steps
        if k == m:
            return covered()
        for y in range(Y.n):
            steps += 1
            if steps > cap:
                raise BudgetExceeded(steps, cap)
            if np.all(np.abs(dx[k, :k] - dy[y, image[:k]]) < eps):
                image[k] = y
                if extend(k + 1):
                    return True
        image[k] = -1
        return False

    return extend(1)
