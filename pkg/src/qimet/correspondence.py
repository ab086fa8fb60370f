"""Correspondences, map pairs and the distortion functionals built on them."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import SizeMismatch
from .metricspace import PseudoMetricSpace


@dataclass(frozen=True, eq=False)
class Correspondence:
    """A relation between ``range(n_x)`` and ``range(n_y)`` with both projections onto.

    Pairs are kept sorted lexicographically; ``mask`` is the ``n_x`` by
    ``n_y`` membership table.
    """

    n_x: int
    n_y: int
    pairs: tuple

    def __post_init__(self):
        pairs = tuple(sorted({(int(i), int(j)) for i, j in self.pairs}))
        if not pairs:
            raise ValueError("a correspondence needs at least one pair")
        mask = np.zeros((self.n_x, self.n_y), dtype=bool)
        for i, j in pairs:
            if not (0 <= i < self.n_x and 0 <= j < self.n_y):
                raise ValueError(f"pair {(i, j)} outside a {self.n_x}x{self.n_y} grid")
            mask[i, j] = True
        if not mask.any(axis=1).all():
            raise ValueError("some point of X has no partner")
        if not mask.any(axis=0).all():
            raise ValueError("some point of Y has no partner")
        mask.setflags(write=False)
        object.__setattr__(self, "pairs", pairs)
        object.__setattr__(self, "mask", mask)

    @classmethod
    def from_mask(cls, mask) -> "Correspondence":
        mask = np.asarray(mask, dtype=bool)
        return cls(mask.shape[0], mask.shape[1], tuple(map(tuple, np.argwhere(mask))))

    @classmethod
    def diagonal(cls, n: int) -> "Correspondence":
        return cls(n, n, tuple((i, i) for i in range(n)))

    @property
    def xs(self) -> np.ndarray:
        return np.array([p[0] for p in self.pairs])

    @property
    def ys(self) -> np.ndarray:
        return np.array([p[1] for p in self.pairs])

    @property
    def T(self) -> "Correspondence":
        return Correspondence(self.n_y, self.n_x, tuple((j, i) for i, j in self.pairs))

    def __len__(self):
        return len(self.pairs)

    def __contains__(self, pair):
        i, j = pair
        return bool(self.mask[i, j])

    def __eq__(self, other):
        if not isinstance(other, Correspondence):
            return NotImplemented
        return (self.n_x, self.n_y, self.pairs) == (other.n_x, other.n_y, other.pairs)

    def __hash__(self):
        return hash((self.n_x, self.n_y, self.pairs))

    def __repr__(self):
        return f"Correspondence({self.n_x}x{self.n_y}, {list(self.pairs)})"

    def to_dict(self) -> dict:
        return {"nX": self.n_x, "nY": self.n_y, "pairs": [list(p) for p in self.pairs]}


@dataclass(frozen=True, eq=False)
class MapPair:
    """Maps ``f: X -> Y`` and ``g: Y -> X`` stored as index arrays."""

    f: np.ndarray
    g: np.ndarray

    def __post_init__(self):
        f = np.array(self.f, dtype=np.int64).reshape(-1)
        g = np.array(self.g, dtype=np.int64).reshape(-1)
        if f.size == 0 or g.size == 0:
            raise ValueError("maps must have nonempty domains")
        if f.min() < 0 or f.max() >= g.size or g.min() < 0 or g.max() >= f.size:
            raise ValueError("map entries out of range")
        f.setflags(write=False)
        g.setflags(write=False)
        object.__setattr__(self, "f", f)
        object.__setattr__(self, "g", g)

    @property
    def n_x(self) -> int:
        return self.f.size

    @property
    def n_y(self) -> int:
        return self.g.size

    @classmethod
    def identity(cls, n: int) -> "MapPair":
        return cls(np.arange(n), np.arange(n))

    def swapped(self) -> "MapPair":
        return MapPair(self.g, self.f)

    def __eq__(self, other):
        if not isinstance(other, MapPair):
            return NotImplemented
        return np.array_equal(self.f, other.f) and np.array_equal(self.g, other.g)

    def __hash__(self):
        return hash((self.f.tobytes(), self.g.tobytes()))

    def __repr__(self):
        return f"MapPair(f={self.f.tolist()}, g={self.g.tolist()})"

    def to_dict(self) -> dict:
        return {"f": self.f.tolist(), "g": self.g.tolist()}


@dataclass(frozen=True)
class QiParams:
    """Quasi-isometry constants: multiplicative ``A >= 1``, additive ``B``, closeness ``C``."""

    A: float
    B: float
    C: float

    def __post_init__(self):
        if not (self.A >= 1 and self.B >= 0 and self.C >= 0):
            raise ValueError(f"need A >= 1, B >= 0, C >= 0, got {self}")

    def as_tuple(self):
        return (self.A, self.B, self.C)


def _check_sizes(n_x, n_y, X, Y):
    if n_x != X.n or n_y != Y.n:
        raise SizeMismatch(f"object is {n_x}x{n_y} but spaces have {X.n} and {Y.n} points")


def _check_map(f, X, Y):
    f = np.asarray(f, dtype=np.int64)
    if f.ndim != 1 or f.size != X.n:
        raise SizeMismatch(f"map has {f.size} entries, domain has {X.n} points")
    if f.size and (f.min() < 0 or f.max() >= Y.n):
        raise SizeMismatch("map values outside the target space")
    return f


def _positive_root(p, q):
    """Positive root of ``u**2 + p*u - q = 0`` for ``q >= 0``, cancellation-free."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    s = np.sqrt(p * p + 4 * q)
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(p > 0, 2 * q / (p + s), (s - p) / 2)


def qdis_cost(dx, dy):
    """Smallest ``r >= 0`` with ``dy/e^r - e^r + 1 <= dx <= e^r dy + e^{2r} - e^r``.

    With ``u = e^r`` each inequality is a quadratic in ``u``; the answer is
    the log of the larger positive root, clamped at ``u = 1``. Works
    elementwise on arrays.
    """
    dx = np.asarray(dx, dtype=float)
    dy = np.asarray(dy, dtype=float)
    # each inequality already holds at u = 1 on one side of dx = dy; skip the root there
    upper = np.where(dx <= dy, 1.0, _positive_root(dy - 1, dx))
    lower = np.where(dy <= dx, 1.0, _positive_root(dx - 1, dy))
    u = np.maximum(np.maximum(upper, lower), 1.0)
    return np.log(u)


def pair_values(R: Correspondence, X: PseudoMetricSpace, Y: PseudoMetricSpace):
    """Distances pulled back to the pairs of ``R``: two ``len(R)``-square matrices."""
    _check_sizes(R.n_x, R.n_y, X, Y)
    xs, ys = R.xs, R.ys
    return X.dist[np.ix_(xs, xs)], Y.dist[np.ix_(ys, ys)]


def dis(R: Correspondence, X: PseudoMetricSpace, Y: PseudoMetricSpace) -> float:
    """Additive distortion ``sup |d_X(x, x') - d_Y(y, y')|`` over pairs in ``R``."""
    a, b = pair_values(R, X, Y)
    return float(np.abs(a - b).max())


def dis_map(f, X: PseudoMetricSpace, Y: PseudoMetricSpace) -> float:
    f = _check_map(f, X, Y)
    return float(np.abs(X.dist - Y.dist[np.ix_(f, f)]).max())


def coupling(mp: MapPair, X: PseudoMetricSpace, Y: PseudoMetricSpace) -> float:
    """``sup_{x, y} |d_X(x, g(y)) - d_Y(f(x), y)|``, the cross term of a map pair's distortion."""
    _check_sizes(mp.n_x, mp.n_y, X, Y)
    return float(np.abs(X.dist[:, mp.g] - Y.dist[mp.f, :]).max())


def qdis(R: Correspondence, X: PseudoMetricSpace, Y: PseudoMetricSpace) -> float:
    """Quasi-isometric distortion of ``R``, in closed form."""
    a, b = pair_values(R, X, Y)
    return float(qdis_cost(a, b).max())


def union_correspondence(mp: MapPair) -> Correspondence:
    """Graph of ``f`` together with the transposed graph of ``g``."""
    pairs = [(i, int(j)) for i, j in enumerate(mp.f)]
    pairs += [(int(i), j) for j, i in enumerate(mp.g)]
    return Correspondence(mp.n_x, mp.n_y, tuple(pairs))


def compose(R: Correspondence, S: Correspondence) -> Correspondence:
    """Relational composition: ``(x, z)`` whenever some ``y`` has ``(x, y) in R`` and ``(y, z) in S``."""
    if R.n_y != S.n_x:
        raise SizeMismatch(f"cannot compose {R.n_x}x{R.n_y} with {S.n_x}x{S.n_y}")
    mask = (R.mask.astype(np.int64) @ S.mask.astype(np.int64)) > 0
    return Correspondence.from_mask(mask)


def correspondence_from_dict(obj: dict) -> Correspondence:
    return Correspondence(int(obj["nX"]), int(obj["nY"]), tuple(tuple(p) for p in obj["pairs"]))


def load_correspondence(path) -> Correspondence:
    return correspondence_from_dict(json.loads(Path(path).read_text()))


def save_correspondence(R: Correspondence, path) -> None:
    Path(path).write_text(json.dumps(R.to_dict()) + "\n")
