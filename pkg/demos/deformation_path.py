"""
Deforming one space into another
================================

Along a correspondence ``R`` the spaces ``R_t`` interpolate distances
linearly. Step distortions stay under the closed-form bound and the path
length stays under ``e^{2r} - e^r``.
"""

import numpy as np

from qimet.correspondence import union_correspondence
from qimet.interpolation import (
    InterpolationFamily,
    length_bound,
    path_length_estimate,
    sample,
    step_bound,
    step_distortion,
)
from qimet.propsuite import random_map_pair, random_space

X, Y = random_space(4, seed=1), random_space(3, seed=2)
R = union_correspondence(random_map_pair(4, 3, seed=3))
fam = InterpolationFamily(R, X, Y)
print(f"q-dis of R: r = {fam.r:.4f}, length bound {length_bound(fam.r):.4f}")

print("endpoints recover X and Y:",
      np.array_equal(sample(fam, 0).dist, X.dist), np.array_equal(sample(fam, 1).dist, Y.dist))
print("midpoint space:\n", np.round(sample(fam, 0.5).dist, 3))

for t, s in [(0.1, 0.2), (0.3, 0.9), (0.0, 1.0)]:
    print(f"step {t}->{s}: {step_distortion(fam, t, s):.4f} <= {step_bound(fam.r, abs(t - s)):.4f}")

for parts in (1, 4, 16, 64, 256, 1024):
    print(f"{parts:5d} steps: length estimate {path_length_estimate(fam, parts):.5f}")

for delta in (1e-3, 1e-4, 1e-5):
    print(f"step_bound / delta at {delta:g}: {step_bound(fam.r, delta) / delta:.5f}")
