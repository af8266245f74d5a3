"""Finite stability: the best certificate on a union is the max of the parts.

The certified modified-lower-dimension bound behaves like a maximum under
disjoint unions.  This demo reproduces that desk-scale: the best bound
found on E u F equals the larger of the bounds found on E and F alone,
with identical parameters and budget.
"""
from fracdim import (PointCloud, cantor_cloud, dyadic_interval_cloud,
                     mod_lower_dim_bound, union_cloud)

PARAMS = [(6, 16), (4, 2), (2, 2)]


def best(cloud, name):
    res = mod_lower_dim_bound(cloud, PARAMS, depth=2)
    found = [(k, l) for (k, l, s) in res.outcomes if s.family is not None]
    print(f"  {name}: best bound {res.bound:.6f}, certificates found for {found}")
    return res.bound


print("pair 1: dyadic grid and an isolated point")
grid = dyadic_interval_cloud(12)
point = PointCloud([[0.0]])
b_grid = best(grid, "grid alone")
b_point = best(point, "point alone")
b_union = best(union_cloud(grid, point, offset=2.0), "union")
print(f"  union == max(parts): {b_union == max(b_grid, b_point)}")

print("\npair 2: Cantor endpoints and a two-point set")
cantor = cantor_cloud(8)
two = PointCloud([[0.0], [1.0]])
b_c = best(cantor, "cantor alone")
b_t = best(two, "two points alone")
b_u = best(union_cloud(cantor, two, offset=10.0), "union")
print(f"  union == max(parts): {b_u == max(b_c, b_t)}")
