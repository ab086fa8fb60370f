"""Independent oracles, seeded random instances and the executable property suites.

The oracles here deliberately avoid the closed forms used by the solvers:
they bisect on the defining inequalities instead.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse.csgraph import shortest_path

from . import dmetric, ghdist, interpolation, qidist
from .correspondence import Correspondence, MapPair, pair_values, qdis, union_correspondence
from .metricspace import FiniteMetricSpace, two_point, validate
from .search import SearchBudget, enumerate_map_pairs, local_search_map_pairs


# --- oracles ----------------------------------------------------------------

def _bisect(feasible, tol):
    if feasible(0.0):
        return 0.0
    hi = 1.0
    while not feasible(hi):
        hi *= 2
    lo = 0.0
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if feasible(mid):
            hi = mid
        else:
            lo = mid
    return hi


def oracle_qdis_bisect(R: Correspondence, X, Y, tol: float = 1e-12) -> float:
    """q-dis by bisection on the feasibility of its defining inequalities."""
    if not tol > 0:
        raise ValueError("tol must be positive")
    a, b = pair_values(R, X, Y)

    def feasible(r):
        u, um1 = math.exp(r), math.expm1(r)
        return bool(np.all(b / u - um1 <= a) and np.all(a <= u * b + u * um1))

    return _bisect(feasible, tol)


def qi_feasible(mp: MapPair, X, Y, r: float) -> bool:
    """Is ``mp`` a ``(1 + r, r, r)``-quasi-isometry? Straight from the definition."""
    A = 1 + r
    for dom, cod, h in ((X, Y, mp.f), (Y, X, mp.g)):
        img = cod.dist[np.ix_(h, h)]
        if np.any(dom.dist / A - r > img) or np.any(img > A * dom.dist + r):
            return False
    back_x = X.dist[mp.g[mp.f], np.arange(X.n)]
    back_y = Y.dist[mp.f[mp.g], np.arange(Y.n)]
    return bool(back_x.max() <= r and back_y.max() <= r)


def oracle_min_r_bisect(mp: MapPair, X, Y, tol: float = 1e-12) -> float:
    if not tol > 0:
        raise ValueError("tol must be positive")
    return _bisect(lambda r: qi_feasible(mp, X, Y, r), tol)


# --- random instances -------------------------------------------------------

def _rng(seed):
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def metric_closure(d: np.ndarray) -> np.ndarray:
    """Shortest-path closure of a positive symmetric matrix."""
    return shortest_path(np.asarray(d, dtype=float), method="FW", directed=False)


def random_space(n: int, seed=0, lo: float = 0.5, hi: float = 4.0, slack: float = 0.0) -> FiniteMetricSpace:
    """Uniform entries in ``[lo, hi]`` repaired into a metric by shortest-path closure.

    ``slack`` is added to every off-diagonal entry afterwards, which makes
    all triangles strict.
    """
    if n < 1 or not 0 < lo <= hi:
        raise ValueError("need n >= 1 and 0 < lo <= hi")
    rng = _rng(seed)
    upper = np.triu(rng.uniform(lo, hi, size=(n, n)), 1)
    d = metric_closure(upper + upper.T)
    # rounding in path sums can leave ulp-sized violations; iterate to a fixed point
    while not np.array_equal(nxt := metric_closure(d), d):
        d = nxt
    d = d + slack * (1 - np.eye(n))
    return validate(d)


def random_map_pair(n_x: int, n_y: int, seed=0) -> MapPair:
    rng = _rng(seed)
    return MapPair(rng.integers(0, n_y, n_x), rng.integers(0, n_x, n_y))


def random_correspondence(n_x: int, n_y: int, seed=0, density: float = 0.3) -> Correspondence:
    """A map-pair union with each remaining grid cell added with probability ``density``."""
    rng = _rng(seed)
    mask = union_correspondence(random_map_pair(n_x, n_y, rng)).mask.copy()
    mask |= rng.random((n_x, n_y)) < density
    return Correspondence.from_mask(mask)


def _spaces(rng, count, sizes):
    return [random_space(int(rng.choice(sizes)), rng) for _ in range(count)]


# --- suites -----------------------------------------------------------------

@dataclass
class SuiteReport:
    """Outcome of one property suite. ``worst_slack`` is the smallest margin
    seen (negative means some check failed)."""

    suite: str
    trials: int = 0
    passed: int = 0
    failed: int = 0
    worst_slack: float = math.inf
    seconds: float = 0.0
    failures: list = field(default_factory=list)

    def check(self, slack: float, info=None):
        self.trials += 1
        self.worst_slack = min(self.worst_slack, float(slack))
        if slack >= 0:
            self.passed += 1
        else:
            self.failed += 1
            if len(self.failures) < 10:
                self.failures.append({"slack": float(slack), "info": info})

    @property
    def ok(self) -> bool:
        return self.failed == 0 and self.trials > 0

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "trials": self.trials,
            "passed": self.passed,
            "failed": self.failed,
            "worst_slack": self.worst_slack,
            "failures": self.failures,
        }


def suite_qdis_oracle(trials=1000, seed=0, tol=1e-9):
    rep, rng = SuiteReport("qdis_oracle"), np.random.default_rng(seed)
    for k in range(trials):
        X, Y = _spaces(rng, 2, [1, 2, 3, 4, 5])
        R = random_correspondence(X.n, Y.n, rng)
        rep.check(tol - abs(qdis(R, X, Y) - oracle_qdis_bisect(R, X, Y)), k)
    return rep


def suite_minr_oracle(trials=1000, seed=0, tol=1e-9):
    rep, rng = SuiteReport("minr_oracle"), np.random.default_rng(seed)
    for k in range(trials):
        X, Y = _spaces(rng, 2, [1, 2, 3, 4, 5])
        mp = random_map_pair(X.n, Y.n, rng)
        rep.check(tol - abs(qidist.min_r_for_pair(mp, X, Y) - oracle_min_r_bisect(mp, X, Y)), k)
    return rep


def suite_reduction(trials=100, seed=0, tol=1e-9):
    """Map-pair solvers against full subset enumeration on 3x3 instances."""
    rep, rng = SuiteReport("reduction"), np.random.default_rng(seed)
    for k in range(trials):
        X, Y = _spaces(rng, 2, [3])
        rep.check(tol - abs(dmetric.d_exact(X, Y) - dmetric.d_exact_subsets(X, Y)), ("d", k))
        rep.check(tol - abs(ghdist.gh_exact(X, Y) - ghdist.gh_exact_subsets(X, Y)), ("gh", k))
    return rep


def suite_triangle_d(trials=200, seed=0, tol=1e-9):
    rep, rng = SuiteReport("triangle_d"), np.random.default_rng(seed)
    for k in range(trials):
        X, Y, Z = _spaces(rng, 3, [1, 2, 3, 4])
        lhs = dmetric.d_exact(X, Z)
        rhs = dmetric.d_exact(X, Y) + dmetric.d_exact(Y, Z)
        rep.check(rhs + tol - lhs, k)
    return rep


def suite_gh_triangle(trials=200, seed=0, tol=1e-9):
    rep, rng = SuiteReport("gh_triangle"), np.random.default_rng(seed)
    for k in range(trials):
        X, Y, Z = _spaces(rng, 3, [1, 2, 3, 4])
        lhs = ghdist.gh_exact(X, Z)
        rhs = ghdist.gh_exact(X, Y) + ghdist.gh_exact(Y, Z)
        rep.check(rhs + tol - lhs, k)
    return rep


def suite_bounds(trials=200, seed=0, tol=1e-9):
    """Both directions of the D / quasi-isometric distance comparison."""
    rep, rng = SuiteReport("bounds"), np.random.default_rng(seed)
    for k in range(trials):
        X, Y = _spaces(rng, 2, [1, 2, 3, 4])
        d = dmetric.d_exact(X, Y)
        q = qidist.qhat_exact(X, Y)
        rep.check(dmetric.bound_d_from_qhat(q) + tol - d, ("D<=ln(1+2q)", k))
        rep.check(dmetric.bound_qhat_from_d(d) + tol - q, ("q<=e^2D-e^D", k))
    return rep


def suite_gh_qhat(trials=200, seed=0, tol=1e-9):
    rep, rng = SuiteReport("gh_qhat"), np.random.default_rng(seed)
    for k in range(trials):
        X, Y = _spaces(rng, 2, [1, 2, 3, 4])
        rep.check(4 * ghdist.gh_exact(X, Y) + tol - qidist.qhat_exact(X, Y), k)
    return rep


def suite_qhat_triangle(trials=200, seed=0, tol=1e-9):
    rep, rng = SuiteReport("qhat_triangle"), np.random.default_rng(seed)
    for k in range(trials):
        X, Y, Z = _spaces(rng, 3, [1, 2, 3, 4])
        r, r2 = qidist.qhat_exact(X, Y), qidist.qhat_exact(Y, Z)
        rep.check(qidist.triangle_bound_qhat(r, r2) + tol - qidist.qhat_exact(X, Z), k)
    return rep


def suite_rho_triangle(trials=200, seed=0, tol=1e-9):
    rep, rng = SuiteReport("rho_triangle"), np.random.default_rng(seed)
    for k in range(trials):
        X, Y, Z = _spaces(rng, 3, [1, 2, 3, 4])
        q = [qidist.qhat_exact(*p) for p in ((X, Y), (Y, Z), (X, Z))]
        rep.check(qidist.rho(q[0]) + qidist.rho(q[1]) + tol - qidist.rho(q[2]), k)
    return rep


def suite_composition(trials=200, seed=0, tol=1e-9):
    """Composed witnesses satisfy the composed constants."""
    rep, rng = SuiteReport("composition"), np.random.default_rng(seed)
    for k in range(trials):
        X, Y, Z = _spaces(rng, 3, [1, 2, 3, 4, 5])
        m1 = random_map_pair(X.n, Y.n, rng)
        m2 = random_map_pair(Y.n, Z.n, rng)
        # alternate between tight (1+r, r, r) certificates and a free multiplicative constant
        A1, A2 = (None, None) if k % 2 == 0 else tuple(rng.uniform(1, 3, 2))
        p1, p2 = qidist.certify(m1, X, Y, A1), qidist.certify(m2, Y, Z, A2)
        ok = (qidist.verify_qi(m1, p1, X, Y, tol) and qidist.verify_qi(m2, p2, Y, Z, tol)
              and qidist.verify_qi(qidist.compose_map_pairs(m1, m2), qidist.compose_params(p1, p2), X, Z, tol))
        rep.check(0.0 if ok else -1.0, k)
    return rep


def suite_eps_iso(trials=100, seed=0, tol=1e-12):
    """Both halves of the epsilon-isometry characterisation of GH distance."""
    rep, rng = SuiteReport("eps_iso"), np.random.default_rng(seed)
    for k in range(trials):
        X, Y = _spaces(rng, 2, [1, 2, 3, 4])
        gh = ghdist.gh_exact(X, Y)
        best, f = ghdist.best_eps_isometry(X, Y)
        # (a) gh < eps gives a 2 eps-isometry
        for eps in (gh + 1e-9, gh * 1.01 + 1e-12, gh + rng.uniform(0, 1)):
            found = ghdist.find_eps_isometry(X, Y, 2 * eps)
            ok = found is not None and ghdist.eps_isometry_check(found, X, Y, 2 * eps)
            rep.check(0.0 if ok else -1.0, ("a", k, eps))
        # (b) an eps-isometry gives gh < 2 eps
        for eps in (best, best * 1.01, best + rng.uniform(0, 1)):
            if eps <= 0:
                continue
            assert ghdist.eps_isometry_check(f, X, Y, eps)
            rep.check(2 * eps - gh if 2 * eps > gh else -1.0, ("b", k, eps))
    return rep


def random_family(rng, sizes=(1, 2, 3, 4, 5)):
    X, Y = _spaces(rng, 2, list(sizes))
    R = union_correspondence(random_map_pair(X.n, Y.n, rng))
    return interpolation.InterpolationFamily(R, X, Y)


def endpoint_matches(fam) -> bool:
    """Quotients at ``t = 0, 1`` reproduce ``X`` and ``Y`` entry for entry."""
    return all(
        np.array_equal(interpolation.sample(fam, t).dist, space.dist)
        for t, space in ((0, fam.X), (1, fam.Y))
    )


def suite_path(families=20, seed=0, pairs=50, partitions=1024, tol=1e-9, length_tol=1e-6):
    """Endpoint, step-size, length and small-step checks on random deformation families."""
    rep, rng = SuiteReport("path"), np.random.default_rng(seed)
    for k in range(families):
        fam = random_family(rng)
        r = fam.r
        rep.check(0.0 if endpoint_matches(fam) else -1.0, ("endpoints", k))
        for t, s in rng.random((pairs, 2)):
            rep.check(interpolation.step_bound(r, abs(t - s)) + tol - interpolation.step_distortion(fam, t, s),
                      ("step", k, t, s))
        est = interpolation.path_length_estimate(fam, partitions)
        rep.check(interpolation.length_bound(r) + length_tol - est, ("length", k))
        K = interpolation.length_bound(r)
        delta = 1e-5
        ratio = interpolation.step_bound(r, delta) / delta
        rep.check(0.01 * K + 1e-12 - abs(ratio - K), ("asymptotic", k))
    return rep


def suite_two_point(trials=50, seed=0, tol=1e-12):
    rep, rng = SuiteReport("two_point"), np.random.default_rng(seed)
    for k in range(trials):
        a, b = rng.uniform(0.01, 10, 2)
        rep.check(tol - abs(ghdist.gh_exact(two_point(a), two_point(b)) - abs(a - b) / 2), (a, b))
    return rep


def suite_search_calibration(trials=100, seed=0, tol=1e-9, budget=None):
    """Annealing against exhaustive enumeration on 3x3 instances; passes when the
    annealer is exact on at least 95% of them."""
    budget = budget or SearchBudget(max_evaluations=10_000, restarts=20)
    rep, rng = SuiteReport("search_calibration"), np.random.default_rng(seed)
    hits = 0
    for k in range(trials):
        X, Y = _spaces(rng, 2, [3])
        obj = dmetric.d_objective(X, Y)
        exact = enumerate_map_pairs(3, 3, obj).best_value
        found = local_search_map_pairs(3, 3, obj, SearchBudget(
            budget.max_evaluations, budget.restarts, int(rng.integers(2**31)),
            budget.initial_temperature, budget.cooling_rate)).best_value
        rep.check(found - exact + tol, ("below optimum", k))
        hits += abs(found - exact) <= tol
    rep.check(hits - 0.95 * trials, ("hits", hits))
    return rep


SUITES = {
    "triangle_d": suite_triangle_d,
    "bounds": suite_bounds,
    "composition": suite_composition,
    "eps_iso": suite_eps_iso,
    "path": suite_path,
    "reduction": suite_reduction,
    "qdis_oracle": suite_qdis_oracle,
    "minr_oracle": suite_minr_oracle,
    "gh_triangle": suite_gh_triangle,
    "gh_qhat": suite_gh_qhat,
    "qhat_triangle": suite_qhat_triangle,
    "rho_triangle": suite_rho_triangle,
    "two_point": suite_two_point,
    "search_calibration": suite_search_calibration,
}


def run_suite(name: str, trials: int | None = None, seed: int = 0) -> SuiteReport:
    fn = SUITES[name]
    start = time.perf_counter()
    rep = fn(seed=seed) if trials is None else fn(trials, seed=seed)
    rep.seconds = time.perf_counter() - start
    return rep
