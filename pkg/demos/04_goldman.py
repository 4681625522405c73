"""Character-variety side: a random irreducible SL2(C) representation of a
genus-2 surface group, its twisted cohomology, and the Goldman form on H^1."""

import numpy as np

from projsymp import charvar

rho = charvar.random_representation(2, seed=5)
print("relator error:", rho.relator_error())
print("dimensions:", charvar.cohomology_dimensions(rho))

conv, gate = charvar.select_convention(rho)
print("coboundary gate (relative size of <cocycle, coboundary>):")
for c, v in gate.items():
    print("   ", c, f"{v:.2e}")

gm = charvar.GoldmanMatrix.compute(rho, conv)
np.set_printoptions(precision=3, suppress=True, linewidth=120)
print(gm.matrix)
print("antisymmetry error:", gm.antisymmetry_error())
print("rank:", gm.rank(), " det margin (n-th root):", gm.det_margin_root())
