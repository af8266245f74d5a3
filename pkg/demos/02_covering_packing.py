"""Covering numbers, packings, and the sandwich between them.

N_r(E) is the least number of diameter-r parts covering E.  A family of
points pairwise farther than r apart forces that many parts, so packing
counts bound covering counts from below; greedy covers bound from above.
"""
import numpy as np

from fracdim import (PointCloud, covering_number, maximal_separated_family,
                     packing_number, validate_cover, validate_packing)

grid = PointCloud(np.arange(11) * 0.1)
sub = grid.all_indices()

res = covering_number(sub, 0.35, mode="exact")
print(f"N_0.35 of the 11-point grid = {res.count} (exact={res.exact})")
for part in res.parts:
    print("  part:", np.round(grid.coords[part.indices, 0], 1).tolist())
print("witness validates independently:", validate_cover(sub, res, 0.35))

pack = packing_number(sub, 0.25, mode="exact")
print(f"\nmax 0.25-separated family = {pack.count} points:",
      np.round(grid.coords[pack.witnesses.indices, 0], 1).tolist())
print("witness validates:", validate_packing(pack, 0.25))

# sandwich: separated points at sep > r each need their own part
for r in (0.15, 0.25, 0.35):
    cover = covering_number(sub, r, mode="exact").count
    packed = packing_number(sub, r * (1 + 1e-9), mode="exact").count
    print(f"r={r}: packing {packed} <= covering {cover}")

# greedy maximal families are deterministic: lowest index first
fam = maximal_separated_family(sub, 0.25, seed=0)
print("\ngreedy maximal family seeded at 0:",
      np.round(grid.coords[fam.indices, 0], 1).tolist())
