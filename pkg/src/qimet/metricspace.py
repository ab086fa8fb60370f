"""Finite metric spaces: validation, quotients, file I/O and example generators."""

from __future__ import annotations

import csv
import itertools
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np
from scipy.sparse.csgraph import connected_components
from scipy.spatial.distance import cdist

from .errors import (
    AsymmetricMatrix,
    BadExponent,
    MetricSpaceError,
    NegativeEntry,
    NonpositiveAlpha,
    TriangleViolation,
    ZeroOffDiagonal,
)

DEFAULT_TOLERANCE = 1e-9

#: Exponent sentinel for the sup norm.
P_INF = math.inf


def _default_labels(n):
    return tuple(f"p{i}" for i in range(n))


@dataclass(frozen=True, eq=False)
class PseudoMetricSpace:
    """A finite set with a symmetric, zero-diagonal distance matrix.

    Distinct points may sit at distance zero. Instances are immutable; the
    matrix is stored as a read-only float array.
    """

    dist: np.ndarray
    labels: tuple = field(default=None)

    def __post_init__(self):
        d = np.array(self.dist, dtype=float)
        if d.ndim != 2 or d.shape[0] != d.shape[1] or d.shape[0] == 0:
            raise MetricSpaceError(f"distance matrix must be square and nonempty, got shape {d.shape}")
        d.setflags(write=False)
        object.__setattr__(self, "dist", d)
        labels = self.labels
        if labels is None:
            labels = _default_labels(d.shape[0])
        labels = tuple(str(s) for s in labels)
        if len(labels) != d.shape[0]:
            raise MetricSpaceError(f"{len(labels)} labels for {d.shape[0]} points")
        object.__setattr__(self, "labels", labels)

    @property
    def n(self) -> int:
        return self.dist.shape[0]

    def __len__(self):
        return self.n

    def __eq__(self, other):
        if not isinstance(other, PseudoMetricSpace):
            return NotImplemented
        return self.labels == other.labels and np.array_equal(self.dist, other.dist)

    def __hash__(self):
        return hash((self.labels, self.dist.tobytes()))

    def __repr__(self):
        return f"{type(self).__name__}(n={self.n})"

    def to_dict(self) -> dict:
        return {"labels": list(self.labels), "matrix": self.dist.tolist()}


class FiniteMetricSpace(PseudoMetricSpace):
    """A finite metric space: a pseudometric with positive off-diagonal entries.

    Build instances through :func:`validate` (or the generators) so that the
    metric axioms are actually checked.
    """


@dataclass(frozen=True)
class PointedSpace:
    space: FiniteMetricSpace
    base: int

    def __post_init__(self):
        if not 0 <= self.base < self.space.n:
            raise MetricSpaceError(f"base point {self.base} outside [0, {self.space.n})")


def _check_axioms(d, tolerance, allow_zero):
    n = d.shape[0]
    if not np.all(np.isfinite(d)):
        raise MetricSpaceError("distance matrix has non-finite entries")
    if np.any(d < 0):
        i, j = np.argwhere(d < 0)[0]
        raise NegativeEntry(f"negative entry d[{i}, {j}] = {d[i, j]}")
    if np.any(np.diag(d) != 0):
        i = int(np.flatnonzero(np.diag(d))[0])
        raise MetricSpaceError(f"nonzero diagonal entry d[{i}, {i}] = {d[i, i]}")
    if not np.array_equal(d, d.T):
        i, j = np.argwhere(d != d.T)[0]
        raise AsymmetricMatrix(f"d[{i}, {j}] = {d[i, j]} but d[{j}, {i}] = {d[j, i]}")
    if not allow_zero:
        off = ~np.eye(n, dtype=bool)
        if np.any((d == 0) & off):
            i, j = np.argwhere((d == 0) & off)[0]
            raise ZeroOffDiagonal(f"distinct points {i} and {j} at distance zero; quotient first")
    # excess[i, k, j] = d[i, j] - d[i, k] - d[k, j]
    excess = d[:, None, :] - d[:, :, None] - d[None, :, :]
    bad = np.argwhere(excess > tolerance)
    triples = sorted((i, j, k) for i, k, j in bad if i < j)
    if triples:
        raise TriangleViolation(triples)


def validate(matrix, tolerance: float = DEFAULT_TOLERANCE, labels: Sequence[str] | None = None) -> FiniteMetricSpace:
    """Check the metric axioms on ``matrix`` and wrap it as a :class:`FiniteMetricSpace`.

    Symmetry and the zero diagonal are checked exactly; the triangle
    inequality is allowed to fail by at most ``tolerance``.

    Raises:
        AsymmetricMatrix, NegativeEntry, ZeroOffDiagonal: as named.
        TriangleViolation: lists every violated ``(i, j, k)`` with ``i < j``.
    """
    d = np.asarray(matrix, dtype=float)
    if d.ndim != 2 or d.shape[0] != d.shape[1] or d.shape[0] == 0:
        raise MetricSpaceError(f"distance matrix must be square and nonempty, got shape {d.shape}")
    _check_axioms(d, tolerance, allow_zero=False)
    return FiniteMetricSpace(d, labels)


def validate_pseudo(matrix, tolerance: float = DEFAULT_TOLERANCE, labels: Sequence[str] | None = None) -> PseudoMetricSpace:
    d = np.asarray(matrix, dtype=float)
    if d.ndim != 2 or d.shape[0] != d.shape[1] or d.shape[0] == 0:
        raise MetricSpaceError(f"distance matrix must be square and nonempty, got shape {d.shape}")
    _check_axioms(d, tolerance, allow_zero=True)
    return PseudoMetricSpace(d, labels)


def quotient_classes(p: PseudoMetricSpace) -> list[list[int]]:
    """Zero-distance classes of ``p``, each sorted, ordered by smallest member."""
    zero = p.dist == 0
    _, comp = connected_components(zero, directed=False)
    classes: dict[int, list[int]] = {}
    for i, c in enumerate(comp):
        classes.setdefault(int(c), []).append(i)
    return sorted(classes.values(), key=lambda members: members[0])


def quotient(p: PseudoMetricSpace) -> FiniteMetricSpace:
    """Identify points at distance zero.

    Classes are ordered by their smallest member; the distance between two
    classes is read off their first members. Labels of merged points are
    joined with ``"|"``.
    """
    classes = quotient_classes(p)
    reps = np.array([c[0] for c in classes])
    d = p.dist[np.ix_(reps, reps)]
    if __debug__:
        for a, ca in enumerate(classes):
            for b, cb in enumerate(classes):
                block = p.dist[np.ix_(ca, cb)]
                assert np.allclose(block, d[a, b], atol=1e-9), "distance not constant on classes"
    labels = ["|".join(p.labels[i] for i in c) for c in classes]
    return FiniteMetricSpace(d, labels)


def diameter(s: PseudoMetricSpace) -> float:
    return float(s.dist.max())


def gen_scaled_lattice(alpha: float, count: int) -> FiniteMetricSpace:
    """The points ``0, alpha, ..., (count - 1) * alpha`` on the line."""
    if not alpha > 0:
        raise NonpositiveAlpha(f"alpha must be positive, got {alpha}")
    if count < 1:
        raise MetricSpaceError("count must be at least 1")
    x = np.arange(count) * float(alpha)
    d = np.abs(x[:, None] - x[None, :])
    return validate(d, labels=[f"{k}a" for k in range(count)])


def polyline_points(segments: int, samples_per_unit: float = 0.0):
    """Planar coordinates and labels of the right-angled zigzag chain.

    Segment ``k`` (1-based) has length ``k``. Directions alternate between
    ``(1, 1)/sqrt 2`` and ``(1, -1)/sqrt 2``, so every corner is a right
    angle and the chain zigzags to the right.
    """
    if segments < 1:
        raise MetricSpaceError("segments must be at least 1")
    if samples_per_unit < 0:
        raise MetricSpaceError("samples_per_unit must be nonnegative")
    up = np.array([1.0, 1.0]) / math.sqrt(2.0)
    down = np.array([1.0, -1.0]) / math.sqrt(2.0)
    vertex = np.zeros(2)
    pts = [vertex]
    labels = ["v0"]
    for k in range(1, segments + 1):
        direction = up if k % 2 == 1 else down
        pieces = math.ceil(k * samples_per_unit) if samples_per_unit > 0 else 1
        for m in range(1, pieces):
            pts.append(vertex + direction * (k * m / pieces))
            labels.append(f"s{k}.{m}")
        vertex = vertex + direction * k
        pts.append(vertex)
        labels.append(f"v{k}")
    return np.array(pts), labels


def gen_polyline_chain(segments: int, samples_per_unit: float = 0.0) -> FiniteMetricSpace:
    """Vertices (and optional samples) of the zigzag chain, with the chord metric of the plane."""
    pts, labels = polyline_points(segments, samples_per_unit)
    return validate(cdist(pts, pts), labels=labels)


def _grid(dim, side):
    if dim < 1:
        raise MetricSpaceError("dim must be at least 1")
    if side < 2:
        raise MetricSpaceError("side must be at least 2")
    pts = np.array(list(itertools.product(range(side), repeat=dim)), dtype=float)
    labels = ["(" + ",".join(str(int(c)) for c in p) + ")" for p in pts]
    return pts, labels


def _lp_matrix(pts, p):
    if p == 1:
        return cdist(pts, pts, "cityblock")
    if p == 2:
        return cdist(pts, pts, "euclidean")
    if p == P_INF:
        return cdist(pts, pts, "chebyshev")
    return cdist(pts, pts, "minkowski", p=p)


def gen_lp_grid(p: float, dim: int, side: int) -> FiniteMetricSpace:
    """Integer grid ``{0, ..., side-1}^dim`` under the l_p norm (``p`` may be :data:`P_INF`)."""
    if math.isnan(p) or p < 1:
        raise BadExponent(f"exponent must be >= 1 or infinity, got {p}")
    pts, labels = _grid(dim, side)
    return validate(_lp_matrix(pts, p), labels=labels)


def gen_interpolated_norm_grid(t: float, dim: int, side: int) -> FiniteMetricSpace:
    """Grid under the norm ``(1 - t) |x|_1 + t |x|_2``."""
    if not 0 <= t <= 1:
        raise MetricSpaceError(f"t must lie in [0, 1], got {t}")
    pts, labels = _grid(dim, side)
    d = (1 - t) * _lp_matrix(pts, 1) + t * _lp_matrix(pts, 2)
    return validate(d, labels=labels)


def two_point(d: float) -> FiniteMetricSpace:
    return validate([[0.0, d], [d, 0.0]], labels=["a", "b"])


def one_point() -> FiniteMetricSpace:
    return validate([[0.0]], labels=["a"])


# --- file formats -----------------------------------------------------------

def space_from_dict(obj: dict, tolerance: float = DEFAULT_TOLERANCE) -> FiniteMetricSpace:
    if "matrix" not in obj:
        raise MetricSpaceError("space JSON needs a 'matrix' field")
    return validate(obj["matrix"], tolerance, labels=obj.get("labels"))


def load_space(path, tolerance: float = DEFAULT_TOLERANCE) -> FiniteMetricSpace:
    """Read a space from JSON (``{"labels": [...], "matrix": [[...]]}``) or a headerless CSV matrix."""
    path = Path(path)
    text = path.read_text()
    if text.lstrip().startswith("{"):
        return space_from_dict(json.loads(text), tolerance)
    rows = [[float(v) for v in row] for row in csv.reader(text.splitlines()) if row]
    return validate(rows, tolerance)


def dump_space(space: PseudoMetricSpace) -> str:
    return json.dumps(space.to_dict())


def save_space(space: PseudoMetricSpace, path) -> None:
    Path(path).write_text(dump_space(space) + "\n")
