import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qimet.correspondence import Correspondence, qdis
from qimet.errors import OutOfRange
from qimet.interpolation import (
    InterpolationFamily,
    length_bound,
    path_length_estimate,
    raw_matrix,
    sample,
    step_bound,
    step_distortion,
)
from qimet.metricspace import validate, validate_pseudo
from qimet.propsuite import endpoint_matches, random_correspondence, random_family, random_space


@pytest.fixture
def family():
    X, Y = random_space(4, 1), random_space(3, 2)
    return InterpolationFamily(random_correspondence(4, 3, 5), X, Y)


def test_endpoints_recover_spaces(family):
    assert np.array_equal(sample(family, 0).dist, family.X.dist)
    assert np.array_equal(sample(family, 1).dist, family.Y.dist)
    assert endpoint_matches(family)


@pytest.mark.parametrize("seed", range(10))
def test_endpoints_on_random_families(seed):
    assert endpoint_matches(random_family(np.random.default_rng(seed)))


def test_endpoint_labels_track_merged_pairs():
    X, Y = random_space(2, 0), random_space(1, 0)
    fam = InterpolationFamily(Correspondence(2, 1, [(0, 0), (1, 0)]), X, Y)
    end = sample(fam, 1)
    assert end.n == 1 and end.labels == ("p0~p0|p1~p0",)


def test_diagonal_on_same_space_is_constant():
    X = random_space(4, 3)
    fam = InterpolationFamily(Correspondence.diagonal(4), X, X)
    for t in (0, 0.3, 1):
        assert np.array_equal(sample(fam, t).dist, X.dist)
    assert path_length_estimate(fam, 16) == 0
    assert fam.r == 0


def test_midpoint_is_exact_mean(family):
    d = sample(family, 0.5).dist
    xs, ys = family.R.xs, family.R.ys
    dx = family.X.dist[np.ix_(xs, xs)]
    dy = family.Y.dist[np.ix_(ys, ys)]
    assert np.array_equal(d, 0.5 * dx + 0.5 * dy)


@given(st.floats(0.01, 0.99))
@settings(max_examples=30, deadline=None)
def test_interior_samples_are_metrics(t):
    fam = random_family(np.random.default_rng(int(t * 1e6)))
    validate_pseudo(raw_matrix(fam, t))
    validate(sample(fam, t).dist)


def test_out_of_range(family):
    with pytest.raises(OutOfRange):
        sample(family, 1.5)
    with pytest.raises(OutOfRange):
        step_distortion(family, -0.1, 0.5)


def test_step_distortion_basics(family):
    assert step_distortion(family, 0.4, 0.4) == 0
    assert step_distortion(family, 0.2, 0.7) == pytest.approx(step_distortion(family, 0.7, 0.2), abs=1e-15)


@given(st.integers(0, 10**6), st.floats(0, 1), st.floats(0, 1))
@settings(max_examples=100, deadline=None)
def test_step_distortion_bounded(seed, t, s):
    fam = random_family(np.random.default_rng(seed))
    assert step_distortion(fam, t, s) <= step_bound(fam.r, abs(t - s)) + 1e-9


@given(st.floats(0, 5))
@settings(max_examples=50, deadline=None)
def test_step_bound_endpoints(r):
    assert step_bound(r, 0) == 0
    assert step_bound(r, 1) == pytest.approx(r, abs=1e-12)


@pytest.mark.parametrize("r", [0.1, 0.5, 1.0, 2.0])
def test_step_bound_asymptotics(r):
    errors = [abs(step_bound(r, d) / d / length_bound(r) - 1) for d in (1e-3, 1e-4, 1e-5)]
    assert errors[0] > errors[1] > errors[2]
    assert errors[2] < 0.01


def test_length_bound_and_validation():
    assert length_bound(0) == 0
    assert length_bound(math.log(2)) == pytest.approx(2)
    with pytest.raises(ValueError):
        step_bound(-1, 0.5)


def test_path_length_bounded_and_monotone():
    rng = np.random.default_rng(0)
    for _ in range(5):
        fam = random_family(rng)
        estimates = [path_length_estimate(fam, 2**k) for k in range(0, 11)]
        assert all(a <= b + 1e-9 for a, b in zip(estimates, estimates[1:]))
        assert estimates[-1] <= length_bound(fam.r) + 1e-6


def test_family_r_defaults_to_qdis(family):
    assert family.r == qdis(family.R, family.X, family.Y)
    with pytest.raises(ValueError):
        path_length_estimate(family, 0)
