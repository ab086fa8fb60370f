"""Straight-line deformation between two spaces along a correspondence.

The point set is the correspondence ``R`` itself; at time ``t`` the distance
between ``(x, y)`` and ``(x', y')`` is ``(1 - t) d_X(x, x') + t d_Y(y, y')``.
At ``t = 0`` and ``t = 1`` the result is only a pseudometric and gets
quotiented back to ``X`` and ``Y``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .correspondence import Correspondence, pair_values, qdis, qdis_cost
from .errors import OutOfRange
from .metricspace import FiniteMetricSpace, PseudoMetricSpace, quotient, quotient_classes


@dataclass(frozen=True, eq=False)
class InterpolationFamily:
    R: Correspondence
    X: FiniteMetricSpace
    Y: FiniteMetricSpace
    r: float = field(default=None)

    def __post_init__(self):
        if self.r is None:
            object.__setattr__(self, "r", qdis(self.R, self.X, self.Y))
        dx, dy = pair_values(self.R, self.X, self.Y)
        object.__setattr__(self, "_dx", dx)
        object.__setattr__(self, "_dy", dy)

    def labels(self):
        return [f"{self.X.labels[i]}~{self.Y.labels[j]}" for i, j in self.R.pairs]


def _check_t(t):
    if not 0 <= t <= 1:
        raise OutOfRange(f"time {t} outside [0, 1]")


def raw_matrix(fam: InterpolationFamily, t: float) -> np.ndarray:
    """Distance matrix on the pairs of ``R`` at time ``t``, without quotienting."""
    _check_t(t)
    # keep entries where both sides agree exact, so unchanged pairs never drift
    return np.where(fam._dx == fam._dy, fam._dx, (1 - t) * fam._dx + t * fam._dy)


def sample(fam: InterpolationFamily, t: float) -> FiniteMetricSpace:
    """The interpolated space at time ``t``.

    Endpoints are quotiented by zero distances, and the classes are put in
    the order of the ``X`` (at 0) or ``Y`` (at 1) points they collapse to,
    so the result has exactly that space's matrix.
    """
    d = raw_matrix(fam, t)
    p = PseudoMetricSpace(d, fam.labels())
    if t not in (0, 1):
        return FiniteMetricSpace(p.dist, p.labels)
    q = quotient(p)
    side = fam.R.xs if t == 0 else fam.R.ys
    reps = [c[0] for c in quotient_classes(p)]
    order = np.argsort(side[reps], kind="stable")
    return FiniteMetricSpace(q.dist[np.ix_(order, order)], tuple(q.labels[i] for i in order))


def step_distortion(fam: InterpolationFamily, t: float, s: float) -> float:
    """q-dis of the identity correspondence between the samples at ``t`` and ``s``."""
    return float(qdis_cost(raw_matrix(fam, t), raw_matrix(fam, s)).max())


def step_bound(r: float, delta: float) -> float:
    """``max(D1, D2)`` with ``e^D1 = 1 + delta (e^r - 1)`` and ``e^{2 D2} - e^D2 = delta (e^{2r} - e^r)``."""
    if r < 0 or delta < 0:
        raise ValueError("r and delta must be nonnegative")
    d1 = math.log1p(delta * math.expm1(r))
    c = delta * (math.exp(2 * r) - math.exp(r))
    # e^D2 = (1 + sqrt(1 + 4c)) / 2, written as 1 + 2c / (1 + sqrt(1 + 4c))
    d2 = math.log1p(2 * c / (1 + math.sqrt(1 + 4 * c)))
    return max(d1, d2)


def length_bound(r: float) -> float:
    return math.exp(2 * r) - math.exp(r)


def path_length_estimate(fam: InterpolationFamily, partitions: int) -> float:
    """Sum of :func:`step_distortion` over the uniform partition of ``[0, 1]``."""
    if partitions < 1:
        raise ValueError("partitions must be at least 1")
    ts = np.linspace(0.0, 1.0, partitions + 1)
    return float(sum(step_distortion(fam, a, b) for a, b in zip(ts[:-1], ts[1:])))
