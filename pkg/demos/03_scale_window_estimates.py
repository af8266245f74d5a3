"""Scale-window lower-dimension estimates.

The estimator takes the minimum of log N_r(B(x, R)) / log(R / r) over all
centers and admissible scale pairs.  Finite samples have true lower
dimension 0, so every report names its window and must be read as a
window-relative quantity.  Two classic behaviors:

  * a Cantor-type set scales like log 2 / log 3 ~ 0.6309 at aligned scales;
  * one isolated point drags the estimate to 0 no matter how dense the rest
    of the set is, because the minimum ranges over every center.
"""
import math

from fracdim import (ScaleWindow, cantor_cloud, dyadic_interval_cloud,
                     interval_plus_point_cloud, lower_dim_estimate)

cantor = cantor_cloud(7)
window = ScaleWindow(3.0 ** -5, 3.0 ** -1, ratio=3.0, min_gap=3.0)
rep = lower_dim_estimate(cantor, window, mode="exact")
print(f"cantor(7), triadic window: alpha_hat = {rep.alpha_hat:.6f}")
print(f"  target log2/log3        = {math.log(2) / math.log(3):.6f}")
print(f"  argmin (center, R, r)   = {rep.argmin}")

grid = dyadic_interval_cloud(8)
window2 = ScaleWindow(2.0 ** -6, 2.0 ** -1)
rep2 = lower_dim_estimate(grid, window2, mode="exact")
print(f"\ndyadic grid(8): alpha_hat = {rep2.alpha_hat:.6f} (a sampled interval is ~1-dimensional)")

ipp = interval_plus_point_cloud(8)
rep3 = lower_dim_estimate(ipp, window2, mode="exact")
center, R, r = rep3.argmin
print(f"\ninterval plus isolated point: alpha_hat = {rep3.alpha_hat}")
print(f"  attained at center coordinate {ipp.coords[center, 0]} with R={R}, r={r}:")
print("  the ball around the isolated point is a single point, so N_r = 1")
