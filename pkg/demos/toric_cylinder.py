"""
Toric code on a cylinder: Renyi entropies and the topological part
==================================================================

The region-A spectrum depends on the ground-state coefficients only
through p1 and p2. The topological part ln 2 + p1 ln p1 + p2 ln p2 vanishes
at p1 = p2 and reaches ln 2 in a flux sector.
"""

import math

from qbell.models import cylinder

n_L = 4
print("theta    p1      S_1        S_2        topological  concurrence")
for k in range(0, 9):
    theta = k * math.pi / 16
    spec = cylinder.CylinderSpec(n_L, math.cos(theta), math.sin(theta))
    p1, _ = spec.p
    print(
        f"{theta:5.3f}  {p1:6.4f}  {cylinder.cylinder_renyi(spec, 1):9.6f}  "
        f"{cylinder.cylinder_renyi(spec, 2):9.6f}  {cylinder.cylinder_topological_part(spec):11.6f}  "
        f"{cylinder.cylinder_concurrence(spec):.6f}"
    )

spec = cylinder.CylinderSpec(n_L, 0.6, 0.8j)
purity = cylinder.cylinder_purity(spec)
print(f"\npurity {purity:.6e} inverts to p = {cylinder.cylinder_p_from_purity(n_L, purity)}")
print(f"disk with {n_L} holes: S = {cylinder.disk_entropy(n_L):.6f} = {n_L} ln 2")
