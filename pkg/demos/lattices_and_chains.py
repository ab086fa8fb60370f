"""
Example spaces
==============

Scaled lattices, the right-angled polygonal chain and sampled norm grids.
"""

import math

import numpy as np

from qimet import metricspace as ms
from qimet.correspondence import MapPair
from qimet.qidist import min_r_for_pair
from qimet.search import all_maps

# truncations of sqrt(2) Z against Z: qhat stays small...
alpha = math.sqrt(2)
for count in (3, 5, 7):
    X, Y = ms.gen_scaled_lattice(alpha, count), ms.gen_scaled_lattice(1.0, count)
    print(f"{count} points: index pair certifies qhat <= {min_r_for_pair(MapPair.identity(count), X, Y):.4f}")


# ...while the best additive distortion of any map grows with the length
def best_map_distortion(X, Y):
    fs = all_maps(X.n, Y.n)
    worst = np.zeros(len(fs))
    for a in range(X.n):
        for b in range(a + 1, X.n):
            np.maximum(worst, np.abs(X.dist[a, b] - Y.dist[fs[:, a], fs[:, b]]), out=worst)
    return worst.min()


for count in (2, 3, 4, 5, 6, 7):
    X, Y = ms.gen_scaled_lattice(alpha, count), ms.gen_scaled_lattice(1.0, count)
    print(f"{count} points: least map distortion {best_map_distortion(X, Y):.4f}")

# the polygonal chain: segment k has length k, turns alternate
chain = ms.gen_polyline_chain(5, samples_per_unit=1)
print("chain points:", chain.n, "first labels", chain.labels[:4])
i0, i2 = chain.labels.index("v0"), chain.labels.index("v2")
print(f"|v0 v2| = {chain.dist[i0, i2]:.4f} (sqrt 5 = {math.sqrt(5):.4f})")

# l1 and l2 grids and a blend of the two norms
for p in (1, 2, ms.P_INF):
    print(f"p = {p}: unit-square diagonal {ms.gen_lp_grid(p, 2, 2).dist[0, 3]:.4f}")
print("t = 0.5 blend diagonal:", ms.gen_interpolated_norm_grid(0.5, 2, 2).dist[0, 3])
