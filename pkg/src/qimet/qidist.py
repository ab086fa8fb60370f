"""The quasi-isometric distance between finite metric spaces.

Two spaces are ``(1 + r, r, r)``-quasi-isometric when maps ``f: X -> Y`` and
``g: Y -> X`` are ``(1 + r, r)``-quasi-isometric embeddings whose
compositions stay within ``r`` of the identities. Closeness is taken
non-strictly so that minima over finite families are attained.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .correspondence import MapPair, QiParams, _check_sizes
from .search import DEFAULT_CAP, MapPairObjective, SearchBudget, SearchResult, enumerate_map_pairs, local_search_map_pairs

DEFAULT_TOLERANCE = 1e-9


@dataclass(frozen=True)
class QiCertificate:
    """A map pair together with the least ``r`` it certifies."""

    mp: MapPair
    r: float

    def to_dict(self) -> dict:
        return {**self.mp.to_dict(), "r": self.r}


def embedding_r(d_dom, d_img):
    """Least ``r >= 0`` with ``d_dom/(1+r) - r <= d_img <= (1+r) d_dom + r``.

    The upper inequality is linear in ``r``; the lower one is the quadratic
    ``r**2 + (d_img + 1) r + d_img - d_dom >= 0``.
    """
    a = np.asarray(d_dom, dtype=float)
    b = np.asarray(d_img, dtype=float)
    upper = (b - a) / (a + 1)
    gap = np.maximum(a - b, 0.0)
    lower = 2 * gap / ((b + 1) + np.sqrt((b + 1) ** 2 + 4 * gap))
    return np.maximum(np.maximum(upper, lower), 0.0)


def qhat_objective(X, Y) -> MapPairObjective:
    dx, dy = X.dist, Y.dist
    n_x, n_y = X.n, Y.n
    pair_f = embedding_r(dx[:, :, None, None], dy[None, None, :, :])
    pair_g = embedding_r(dy[:, :, None, None], dx[None, None, :, :])
    # g(f(x)) near x: charged when f(x) = j and g(j) = i
    cross = np.zeros((n_x, n_y, n_y, n_x))
    j = np.arange(n_y)
    cross[:, j, j, :] = dx.T[:, None, :]
    # f(g(y)) near y: charged when g(y) = i and f(i) = j
    i = np.arange(n_x)
    np.maximum.at(cross, (i, slice(None), slice(None), i), dy[None, :, :])
    return MapPairObjective(pair_f, pair_g, cross)


def min_r_for_pair(mp: MapPair, X, Y) -> float:
    """Least ``r`` for which ``mp`` witnesses a ``(1 + r, r, r)``-quasi-isometry."""
    _check_sizes(mp.n_x, mp.n_y, X, Y)
    f, g = mp.f, mp.g
    r = max(
        embedding_r(X.dist, Y.dist[np.ix_(f, f)]).max(),
        embedding_r(Y.dist, X.dist[np.ix_(g, g)]).max(),
        X.dist[g[f], np.arange(X.n)].max(),
        Y.dist[f[g], np.arange(Y.n)].max(),
    )
    return float(r)


def certify(mp: MapPair, X, Y, A: float = None) -> QiParams:
    """Tightest constants for ``mp``: with ``A`` given, the least ``B`` and ``C``;
    otherwise ``(1 + r, r, r)`` with ``r`` from :func:`min_r_for_pair`."""
    if A is None:
        r = min_r_for_pair(mp, X, Y)
        return QiParams(1 + r, r, r)
    _check_sizes(mp.n_x, mp.n_y, X, Y)
    f, g = mp.f, mp.g
    B = 0.0
    for d_dom, d_img in ((X.dist, Y.dist[np.ix_(f, f)]), (Y.dist, X.dist[np.ix_(g, g)])):
        B = max(B, (d_img - A * d_dom).max(), (d_dom / A - d_img).max())
    C = max(X.dist[g[f], np.arange(X.n)].max(), Y.dist[f[g], np.arange(Y.n)].max())
    return QiParams(A, float(B), float(C))


def verify_qi(mp: MapPair, params: QiParams, X, Y, tol: float = DEFAULT_TOLERANCE) -> bool:
    """Check that ``mp`` is an ``(A, B, C)``-quasi-isometry, each inequality up to ``tol``."""
    _check_sizes(mp.n_x, mp.n_y, X, Y)
    A, B, C = params.as_tuple()
    f, g = mp.f, mp.g
    for d_dom, d_img in ((X.dist, Y.dist[np.ix_(f, f)]), (Y.dist, X.dist[np.ix_(g, g)])):
        if np.any(d_dom / A - B > d_img + tol) or np.any(d_img > A * d_dom + B + tol):
            return False
    if X.dist[g[f], np.arange(X.n)].max() > C + tol:
        return False
    return bool(Y.dist[f[g], np.arange(Y.n)].max() <= C + tol)


def solve_qhat(X, Y, budget: SearchBudget | None = None, cap: int = DEFAULT_CAP, threads: int = 1) -> SearchResult:
    obj = qhat_objective(X, Y)
    if budget is None:
        return enumerate_map_pairs(X.n, Y.n, obj, cap=cap, threads=threads)
    return local_search_map_pairs(X.n, Y.n, obj, budget, threads=threads)


def qhat_exact(X, Y, cap: int = DEFAULT_CAP) -> float:
    return solve_qhat(X, Y, cap=cap).best_value


def qhat_search(X, Y, budget: SearchBudget) -> float:
    return solve_qhat(X, Y, budget).best_value


def qhat_certificate(X, Y, budget: SearchBudget | None = None, cap: int = DEFAULT_CAP) -> QiCertificate:
    res = solve_qhat(X, Y, budget, cap)
    return QiCertificate(res.best_witness, res.best_value)


def compose_params(p1: QiParams, p2: QiParams) -> QiParams:
    """Constants for ``X -> Z`` from ``(A, B, C)`` for ``X -> Y`` and ``(A', B', C')`` for ``Y -> Z``."""
    A, B, C = p1.as_tuple()
    A2, B2, C2 = p2.as_tuple()
    return QiParams(A * A2, A * B2 + A2 * B, A * C2 + A2 * C + B + B2)


def compose_map_pairs(first: MapPair, second: MapPair) -> MapPair:
    """``(f2 . f1, g1 . g2)`` for pairs ``X <-> Y`` then ``Y <-> Z``."""
    if first.n_y != second.n_x:
        raise ValueError("map pairs do not chain")
    return MapPair(second.f[first.f], first.g[second.g])


def triangle_bound_qhat(r: float, r2: float) -> float:
    return 2 * (r + r2 + r * r2)


def upgrade_dense_embedding(A: float, B: float, dense_radius: float) -> QiParams:
    """Constants of the quasi-isometry built from an ``(A, B)``-embedding with ``dense_radius``-dense image."""
    return QiParams(A, B + 2 * dense_radius, A * dense_radius + B)


def rho(qhat_value: float) -> float:
    """``2 + ln(1 + qhat)``, and ``0`` at ``qhat = 0``."""
    if qhat_value < 0:
        raise ValueError("qhat must be nonnegative")
    return 0.0 if qhat_value == 0 else 2 + math.log1p(qhat_value)
