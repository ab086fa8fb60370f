"""Acceptance criteria 1-12, each at its stated tolerance and trial count.

Every test prints one PASS/FAIL line; the lines are repeated in the
terminal summary.
"""

import subprocess
import sys
import time

import pytest

from qimet.metricspace import save_space, two_point
from qimet.propsuite import random_space, run_suite

from conftest import ACCEPTANCE_LINES


def report(num, title, ok, detail, seconds, limit):
    within = seconds < limit
    line = (f"C{num:<2} {'PASS' if ok and within else 'FAIL'}  {title}: {detail}; "
            f"{seconds:.2f}s (limit {limit:g}s)")
    print(line)
    ACCEPTANCE_LINES.append(line)
    return ok and within


def suite_criterion(num, title, suite, trials, limit):
    start = time.perf_counter()
    rep = run_suite(suite, trials)
    seconds = time.perf_counter() - start
    detail = f"{rep.passed}/{rep.trials} checks, worst slack {rep.worst_slack:.3g}"
    assert report(num, title, rep.ok, detail, seconds, limit), rep.failures


def test_c01_qdis_oracle():
    suite_criterion(1, "closed-form q-dis vs bisection oracle (1e-9, 1000)", "qdis_oracle", 1000, 10)


def test_c02_min_r_oracle():
    suite_criterion(2, "min_r_for_pair vs bisection oracle (1e-9, 1000)", "minr_oracle", 1000, 10)


def test_c03_reduction():
    suite_criterion(3, "map-pair vs subset enumeration, D and GH on 3x3 (1e-9, 100)", "reduction", 100, 120)


def test_c04_d_triangle():
    suite_criterion(4, "D triangle inequality (1e-9, 200)", "triangle_d", 200, 300)


def test_c05_d_qhat_bounds():
    suite_criterion(5, "D <= ln(1+2qhat) and qhat <= e^2D - e^D (1e-9, 200)", "bounds", 200, 300)


def test_c06_qhat_gh():
    suite_criterion(6, "qhat <= 4 d_GH (1e-9, 200)", "gh_qhat", 200, 300)


def test_c07_qhat_triangle():
    suite_criterion(7, "qhat(X,Z) <= 2(r + r' + rr') (1e-9, 200)", "qhat_triangle", 200, 300)


def test_c08_composition():
    suite_criterion(8, "composed maps satisfy composed constants (200)", "composition", 200, 60)


def test_c09_eps_isometry():
    suite_criterion(9, "eps-isometries vs GH distance, both directions (100)", "eps_iso", 100, 120)


def test_c10_path():
    suite_criterion(10, "endpoints, steps, length and small-step ratio (20 families)", "path", 20, 120)


def test_c11_two_point():
    suite_criterion(11, "two-point GH closed form (1e-12, 50)", "two_point", 50, 1)


def cli(*args):
    return subprocess.run([sys.executable, "-m", "qimet.cli", *args], capture_output=True, check=True).stdout


def test_c12_determinism(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    save_space(random_space(4, 1), a)
    save_space(random_space(4, 2), b)
    small = tmp_path / "t.json"
    save_space(two_point(1.5), small)
    commands = [
        ("gen", "random", "--n", "5", "--seed", "7"),
        ("gen", "random", "--n", "3", "--seed", "11", "--slack", "0.3"),
        ("dist", str(a), str(b), "--method", "gh", "--search", "--seed", "5", "--witness"),
        ("dist", str(a), str(b), "--method", "qhat", "--search", "--seed", "5", "--witness"),
        ("dist", str(a), str(b), "--method", "dmetric", "--search", "--seed", "5", "--witness"),
        ("dist", str(small), str(a), "--method", "qhat", "--search", "--seed", "9", "--restarts", "3"),
        ("verify", "bounds", "--trials", "10", "--seed", "4"),
    ]
    start = time.perf_counter()
    same = [cli(*c) == cli(*c) for c in commands]
    seconds = time.perf_counter() - start
    detail = f"{sum(same)}/{len(same)} commands byte-identical across two runs"
    assert report(12, "seeded search and generation reproduce byte-identical reports", all(same), detail,
                  seconds, 300)
