"""
The metric D and its comparison with qhat
=========================================

D is the least q-dis over correspondences. It is a genuine metric and is
controlled by qhat from both sides.
"""

import math

from qimet import metricspace as ms
from qimet.correspondence import Correspondence, qdis
from qimet.dmetric import bound_d_from_qhat, bound_qhat_from_d, d_exact, d_exact_subsets, solve_d
from qimet.propsuite import random_space
from qimet.qidist import qhat_exact

X, Y = ms.two_point(1.0), ms.two_point(3.0)
res = solve_d(X, Y)
print(f"D = {res.best_value:.6f} (ln sqrt 3 = {math.log(3) / 2:.6f}), witness {res.best_witness.pairs}")

# a single pair of pairs with distances 3 and 1
print("q-dis of the diagonal:", qdis(Correspondence.diagonal(2), ms.two_point(3), ms.two_point(1)))

# triangle inequality on a random triple
A, B, C = (random_space(3, seed=s) for s in (10, 11, 12))
ab, bc, ac = d_exact(A, B), d_exact(B, C), d_exact(A, C)
print(f"D(A,C) = {ac:.4f} <= D(A,B) + D(B,C) = {ab + bc:.4f}")
print("subset cross-check:", d_exact_subsets(A, C))

# both comparison bounds
q = qhat_exact(A, B)
print(f"D = {ab:.4f} <= ln(1 + 2 qhat) = {bound_d_from_qhat(q):.4f}")
print(f"qhat = {q:.4f} <= e^2D - e^D = {bound_qhat_from_d(ab):.4f}")
