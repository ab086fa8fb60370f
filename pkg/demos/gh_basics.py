"""
Gromov-Hausdorff distance on small spaces
=========================================

Exact GH distance via map pairs, the subset cross-check, the diameter
lower bound and epsilon-isometries.
"""

import numpy as np

from qimet import metricspace as ms
from qimet.ghdist import (
    best_eps_isometry,
    gh_exact,
    gh_exact_subsets,
    gh_lower_bound_diam,
    gh_search,
    pointed_gh_check,
)
from qimet.propsuite import random_space
from qimet.search import SearchBudget

# two-point spaces: the distance is half the gap
X, Y = ms.two_point(1.0), ms.two_point(3.0)
print("d_GH(two_point(1), two_point(3)) =", gh_exact(X, Y))

# map pairs and plain subset enumeration agree
A, B = random_space(3, seed=1), random_space(3, seed=2)
print("map pairs:", gh_exact(A, B), " subsets:", gh_exact_subsets(A, B))
print("diameter bound:", gh_lower_bound_diam(A, B))

# annealing gives an upper bound on bigger inputs
C, D = random_space(6, seed=3), random_space(6, seed=4)
print("search upper bound on 6x6:", gh_search(C, D, SearchBudget(rng_seed=0)))

# the best epsilon-isometry A -> B sits within twice the GH distance
eps, f = best_eps_isometry(A, B)
print(f"best eps-isometry: eps = {eps:.4f}, map = {f.tolist()}, 2 d_GH = {2 * gh_exact(A, B):.4f}")

# pointed check on a slightly stretched lattice
Xp = ms.PointedSpace(ms.gen_scaled_lattice(1.05, 8), 0)
Yp = ms.PointedSpace(ms.gen_scaled_lattice(1.0, 8), 0)
print("pointed check r=3, eps=0.5:", pointed_gh_check(Xp, Yp, 3.0, 0.5))
