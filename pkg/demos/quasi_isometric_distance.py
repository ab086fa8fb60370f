"""
Quasi-isometric distance
========================

Least ``r`` such that two spaces are ``(1 + r, r, r)``-quasi-isometric,
certificates, and the comparison with GH distance.
"""

from qimet import metricspace as ms
from qimet.correspondence import MapPair, QiParams
from qimet.ghdist import gh_exact
from qimet.propsuite import random_map_pair, random_space
from qimet.qidist import (
    certify,
    compose_map_pairs,
    compose_params,
    min_r_for_pair,
    qhat_certificate,
    qhat_exact,
    rho,
    verify_qi,
)

# index map between {0, 1.2, 2.4} and {0, 1, 2}
X, Y = ms.gen_scaled_lattice(1.2, 3), ms.gen_scaled_lattice(1.0, 3)
mp = MapPair.identity(3)
r = min_r_for_pair(mp, X, Y)
print(f"index pair certifies r = {r:.4f}")
print("verify (1+r, r, r):", verify_qi(mp, QiParams(1 + r, r, r), X, Y))

# the optimum over all map pairs, with its witness
cert = qhat_certificate(X, Y)
print("qhat =", cert.r, "witness", cert.to_dict())

# qhat is at most four times the GH distance
A, B = random_space(4, seed=5), random_space(3, seed=6)
print(f"qhat = {qhat_exact(A, B):.4f} <= 4 d_GH = {4 * gh_exact(A, B):.4f}")
print(f"rho = {rho(qhat_exact(A, B)):.4f}")

# constants compose: certify two random pairs and chain them
Z = random_space(3, seed=7)
m1, m2 = random_map_pair(A.n, B.n, 1), random_map_pair(B.n, Z.n, 2)
p = compose_params(certify(m1, A, B), certify(m2, B, Z))
print("composed constants", p.as_tuple(), "hold:", verify_qi(compose_map_pairs(m1, m2), p, A, Z))
