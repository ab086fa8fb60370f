"""Exhaustive and annealing search over map pairs and correspondences.

Scores can be arbitrary callables, but the solvers in this package hand in
structured objectives (:class:`MapPairObjective`, :class:`PairCostObjective`)
whose values are maxima of precomputed cost tables. Those are enumerated
with vectorised numpy and annealed with a compiled kernel.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Callable

import numba
import numpy as np

from .correspondence import Correspondence, MapPair
from .errors import BudgetExceeded

DEFAULT_CAP = 10**8
DEFAULT_MAX_BITS = 25
_CHUNK_ELEMENTS = 1 << 20


@dataclass(frozen=True)
class SearchBudget:
    """Annealing budget. ``max_evaluations`` is counted per restart."""

    max_evaluations: int = 10_000
    restarts: int = 20
    rng_seed: int = 0
    initial_temperature: float = 1.0
    cooling_rate: float = 0.999

    def __post_init__(self):
        if self.max_evaluations < 1:
            raise ValueError("max_evaluations must be at least 1")
        if self.restarts < 1:
            raise ValueError("restarts must be at least 1")
        if not 0 < self.cooling_rate < 1:
            raise ValueError("cooling_rate must lie in (0, 1)")
        if self.initial_temperature < 0:
            raise ValueError("initial_temperature must be nonnegative")


@dataclass(frozen=True)
class SearchResult:
    best_value: float
    best_witness: Any
    evaluations_used: int
    certified_exact: bool


@dataclass(frozen=True, eq=False)
class MapPairObjective:
    """Score of ``(f, g)`` as the largest of three lookup tables.

    ``pair_f[x, x', j, j']`` is charged when ``f(x) = j, f(x') = j'``;
    ``pair_g[y, y', i, i']`` likewise for ``g``; ``cross[x, j, y, i]`` when
    ``f(x) = j`` and ``g(y) = i``.
    """

    pair_f: np.ndarray
    pair_g: np.ndarray
    cross: np.ndarray

    def __post_init__(self):
        n_x, n_y = self.pair_f.shape[0], self.pair_g.shape[0]
        if (self.pair_f.shape != (n_x, n_x, n_y, n_y) or self.pair_g.shape != (n_y, n_y, n_x, n_x)
                or self.cross.shape != (n_x, n_y, n_y, n_x)):
            raise ValueError("inconsistent objective table shapes")
        for name in ("pair_f", "pair_g", "cross"):
            object.__setattr__(self, name, np.ascontiguousarray(getattr(self, name), dtype=float))

    @property
    def n_x(self) -> int:
        return self.pair_f.shape[0]

    @property
    def n_y(self) -> int:
        return self.pair_g.shape[0]

    @classmethod
    def from_pair_cost(cls, cost: Callable, dx: np.ndarray, dy: np.ndarray) -> "MapPairObjective":
        """Objective ``max cost(d_X(x, x'), d_Y(y, y'))`` over pairs of the union correspondence."""
        pair_f = cost(dx[:, :, None, None], dy[None, None, :, :])
        pair_g = cost(dx[None, None, :, :], dy[:, :, None, None])
        # cross[x, j, y, i] = cost(dx[x, i], dy[j, y])
        cross = cost(dx[:, None, None, :], dy[None, :, :, None])
        return cls(pair_f, pair_g, cross)

    def f_scores(self, fs: np.ndarray) -> np.ndarray:
        return _map_scores(self.pair_f, fs)

    def g_scores(self, gs: np.ndarray) -> np.ndarray:
        return _map_scores(self.pair_g, gs)

    def __call__(self, mp: MapPair) -> float:
        return float(_score(self.pair_f, self.pair_g, self.cross, mp.f, mp.g))


def _map_scores(table, maps):
    n = maps.shape[1]
    out = np.full(maps.shape[0], -np.inf)
    for a in range(n):
        for b in range(n):
            np.maximum(out, table[a, b][maps[:, a], maps[:, b]], out=out)
    return out


@dataclass(frozen=True, eq=False)
class PairCostObjective:
    """Score of a correspondence as ``max table[(x, y), (x', y')]`` over its pairs.

    The table is indexed by flattened grid cells ``x * n_y + y`` and must be
    nonnegative.
    """

    n_x: int
    n_y: int
    table: np.ndarray

    @classmethod
    def from_pair_cost(cls, cost: Callable, dx: np.ndarray, dy: np.ndarray) -> "PairCostObjective":
        n_x, n_y = dx.shape[0], dy.shape[0]
        t = cost(dx[:, None, :, None], dy[None, :, None, :])
        return cls(n_x, n_y, np.asarray(t, dtype=float).reshape(n_x * n_y, n_x * n_y))

    def __call__(self, R: Correspondence) -> float:
        cells = np.array([i * self.n_y + j for i, j in R.pairs])
        return float(self.table[np.ix_(cells, cells)].max())


def all_maps(n_dom: int, n_cod: int) -> np.ndarray:
    """Every map ``range(n_dom) -> range(n_cod)`` as rows, in lexicographic order."""
    idx = np.arange(n_cod**n_dom)
    return np.stack(np.unravel_index(idx, (n_cod,) * n_dom), axis=1).astype(np.int64)


def map_pair_count(n_x: int, n_y: int) -> int:
    return n_y**n_x * n_x**n_y


def enumerate_map_pairs(n_x: int, n_y: int, score, cap: int = DEFAULT_CAP, threads: int = 1) -> SearchResult:
    """Exact minimum of ``score`` over all ``n_y**n_x * n_x**n_y`` map pairs.

    Ties resolve to the lexicographically first ``(f, g)``.

    Raises:
        BudgetExceeded: if the pair count is above ``cap``.
    """
    total = map_pair_count(n_x, n_y)
    if total > cap:
        raise BudgetExceeded(total, cap)
    fs = all_maps(n_x, n_y)
    gs = all_maps(n_y, n_x)
    if not isinstance(score, MapPairObjective):
        best, witness = np.inf, None
        for f in fs:
            for g in gs:
                mp = MapPair(f, g)
                v = score(mp)
                if v < best:
                    best, witness = v, mp
        return SearchResult(float(best), witness, total, True)

    if (score.n_x, score.n_y) != (n_x, n_y):
        raise ValueError("objective shape does not match the requested sizes")
    f_part = score.f_scores(fs)
    g_part = score.g_scores(gs)
    # cross_g[x][y] is an (n_y, n_G) table: the cross cost for f(x) = row, g = column
    cross_g = [[score.cross[x, :, y, :][:, gs[:, y]] for y in range(n_y)] for x in range(n_x)]
    rows = max(1, _CHUNK_ELEMENTS // len(gs))
    starts = range(0, len(fs), rows)

    def run(start):
        sl = slice(start, start + rows)
        block = np.maximum(f_part[sl, None], g_part[None, :])
        for x in range(n_x):
            fx = fs[sl, x]
            for y in range(n_y):
                np.maximum(block, cross_g[x][y][fx], out=block)
        k = int(np.argmin(block))
        i, j = divmod(k, block.shape[1])
        return float(block[i, j]), start + i, j

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(run, starts))
    else:
        parts = [run(s) for s in starts]
    value, i, j = min(parts)
    return SearchResult(value, MapPair(fs[i], gs[j]), total, True)


def enumerate_correspondences(n_x: int, n_y: int, score, max_bits: int = DEFAULT_MAX_BITS) -> SearchResult:
    """Exact minimum of ``score`` over every correspondence between grids of the given sizes.

    Walks all ``2**(n_x * n_y)`` subsets of the grid and keeps those with
    both projections onto. ``evaluations_used`` is the number of
    correspondences scored.

    Raises:
        BudgetExceeded: if ``n_x * n_y > max_bits``.
    """
    m = n_x * n_y
    if m > max_bits:
        raise BudgetExceeded(2**m, 2**max_bits)
    structured = isinstance(score, PairCostObjective)
    best, best_mask, count = np.inf, None, 0
    weights = 1 << np.arange(m, dtype=np.int64)
    rows = max(1, _CHUNK_ELEMENTS // (m * m))
    for start in range(1, 2**m, rows):
        codes = np.arange(start, min(start + rows, 2**m), dtype=np.int64)
        bits = (codes[:, None] & weights) != 0
        grid = bits.reshape(-1, n_x, n_y)
        ok = grid.any(axis=2).all(axis=1) & grid.any(axis=1).all(axis=1)
        bits = bits[ok]
        if not len(bits):
            continue
        count += len(bits)
        if structured:
            both = bits[:, :, None] & bits[:, None, :]
            vals = np.where(both, score.table[None], 0.0).max(axis=(1, 2))
        else:
            vals = np.array([score(Correspondence.from_mask(b.reshape(n_x, n_y))) for b in bits])
        k = int(np.argmin(vals))
        if vals[k] < best:
            best, best_mask = float(vals[k]), bits[k].reshape(n_x, n_y)
    return SearchResult(best, Correspondence.from_mask(best_mask), count, True)


# --- annealing --------------------------------------------------------------

@numba.njit(cache=True, nogil=True)
def _score(pair_f, pair_g, cross, f, g):
    n_x = f.shape[0]
    n_y = g.shape[0]
    best = -np.inf
    for a in range(n_x):
        for b in range(n_x):
            v = pair_f[a, b, f[a], f[b]]
            if v > best:
                best = v
    for a in range(n_y):
        for b in range(n_y):
            v = pair_g[a, b, g[a], g[b]]
            if v > best:
                best = v
    for x in range(n_x):
        for y in range(n_y):
            v = cross[x, f[x], y, g[y]]
            if v > best:
                best = v
    return best


@numba.njit(cache=True, nogil=True)
def _anneal(pair_f, pair_g, cross, f, g, draws, t0, cooling):
    n_x = f.shape[0]
    n_y = g.shape[0]
    cur = _score(pair_f, pair_g, cross, f, g)
    best = cur
    best_f = f.copy()
    best_g = g.copy()
    temp = t0
    for k in range(draws.shape[0]):
        c = min(int(draws[k, 0] * (n_x + n_y)), n_x + n_y - 1)
        if c < n_x:
            size = n_y
            old = f[c]
        else:
            size = n_x
            old = g[c - n_x]
        if size > 1:
            v = min(int(draws[k, 1] * (size - 1)), size - 2)
            if v >= old:
                v += 1
            if c < n_x:
                f[c] = v
            else:
                g[c - n_x] = v
            new = _score(pair_f, pair_g, cross, f, g)
            accept = new <= cur
            if not accept and temp > 0.0:
                accept = draws[k, 2] < np.exp(-(new - cur) / temp)
            if accept:
                cur = new
                if cur < best:
                    best = cur
                    best_f[:] = f
                    best_g[:] = g
            elif c < n_x:
                f[c] = old
            else:
                g[c - n_x] = old
        temp *= cooling
    return best, best_f, best_g


def _anneal_generic(score, f, g, draws, t0, cooling):
    n_x, n_y = f.size, g.size
    cur = score(MapPair(f, g))
    best, best_f, best_g = cur, f.copy(), g.copy()
    temp = t0
    for c_draw, v_draw, u in draws:
        c = min(int(c_draw * (n_x + n_y)), n_x + n_y - 1)
        arr, pos = (f, c) if c < n_x else (g, c - n_x)
        size = n_y if c < n_x else n_x
        if size > 1:
            old = arr[pos]
            v = min(int(v_draw * (size - 1)), size - 2)
            arr[pos] = v + 1 if v >= old else v
            new = score(MapPair(f, g))
            if new <= cur or (temp > 0 and u < np.exp(-(new - cur) / temp)):
                cur = new
                if cur < best:
                    best, best_f, best_g = cur, f.copy(), g.copy()
            else:
                arr[pos] = old
        temp *= cooling
    return best, best_f, best_g


def local_search_map_pairs(n_x: int, n_y: int, score, budget: SearchBudget, threads: int = 1) -> SearchResult:
    """Simulated annealing over map pairs.

    Each restart starts from a uniformly random pair and proposes
    reassigning one image point, accepted by the Metropolis rule under a
    geometric cooling schedule. Restarts draw from independent streams
    spawned from ``budget.rng_seed``, so the result depends on the seed only.
    """
    steps = budget.max_evaluations - 1
    streams = np.random.SeedSequence(budget.rng_seed).spawn(budget.restarts)

    def restart(seq):
        rng = np.random.default_rng(seq)
        f = rng.integers(0, n_y, size=n_x).astype(np.int64)
        g = rng.integers(0, n_x, size=n_y).astype(np.int64)
        draws = rng.random((steps, 3))
        if isinstance(score, MapPairObjective):
            return _anneal(score.pair_f, score.pair_g, score.cross, f, g, draws,
                           budget.initial_temperature, budget.cooling_rate)
        return _anneal_generic(score, f, g, draws, budget.initial_temperature, budget.cooling_rate)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            runs = list(pool.map(restart, streams))
    else:
        runs = [restart(s) for s in streams]
    k = min(range(len(runs)), key=lambda i: (runs[i][0], i))
    value, f, g = runs[k]
    return SearchResult(float(value), MapPair(f, g), budget.restarts * budget.max_evaluations, False)


def iter_map_pairs(n_x: int, n_y: int):
    """Plain generator over all map pairs; reference path for tests."""
    for f in itertools.product(range(n_y), repeat=n_x):
        for g in itertools.product(range(n_x), repeat=n_y):
            yield MapPair(f, g)
