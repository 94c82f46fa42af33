"""Generalized degrees of freedom with one oblivious receiver.

For INR = SNR^alpha the union over beta of simple polytopes gives the
achievable gDoF region.  At alpha = 4/3 it reaches the classical sum-gDoF but
misses the symmetric corner.  The W-curve table compares sum-gDoF across the
interference range.
"""

import numpy as np

from oblivious_ic import gdof_closure, sum_gdof_classic, sum_gdof_icor, sum_gdof_tin
from oblivious_ic.gdof import beta_grid, classic_region_vertices

poly = gdof_closure(4 / 3, beta_grid(1e-3))
# past beta = 1/3 the d2 constraint drops to 1 - beta, so the frontier is a
# fine staircase along d1 + d2 = 1; print a subsample
print(f"alpha = 4/3 frontier, {len(poly.vertices)} vertices (d1, d2):")
for d1, d2 in poly.vertices[:3] + poly.vertices[3::100] + poly.vertices[-1:]:
    print(f"  ({d1:.3f}, {d2:.3f})")
print(f"max sum {poly.max_sum:.4f}, best beta {poly.best_beta():.3f}")
print(f"classical corners: {classic_region_vertices(4 / 3)}")
print(f"symmetric point (2/3, 2/3) achieved: {poly.contains(2 / 3, 2 / 3)}")

eps = 0.01
print(f"\n{'alpha':>5} {'oblivious':>9} {'classic':>7} {'tin':>5}")
for a in np.round(np.arange(0, 3.01, 0.25), 2):
    icor = sum_gdof_icor(a, eps) if a != 1.0 else float("nan")
    print(f"{a:5.2f} {icor:9.3f} {sum_gdof_classic(a):7.3f} {sum_gdof_tin(a):5.2f}")
