"""Cech model of the deformation complex on the genus-2 curve
y^2 = x(x-1)...(x-5) with marked points at the two points over infinity:
the residue pairing kills coboundaries in either slot, and the induced form
on the 6-dimensional first hypercohomology is antisymmetric and nondegenerate."""

import random

from projsymp.cech import CechModel, literal_pairing, pairing, pairing_matrix
from projsymp.riemann import Curve

model = CechModel(Curve.default(), N=10)
basis = model.h1_basis()
print("dim H^1 =", basis.dim, "; vertical classes:", basis.vertical_indices)

rng = random.Random(3)
_, cob = model.random_coboundary(rng)
_, c = model.random_cocycle(rng)
print("pairing(coboundary, cocycle) =", pairing(cob, c))
print("pairing(cocycle, coboundary) =", pairing(c, cob))
print("same pair with the + sign variant:", literal_pairing(cob, c))

M = pairing_matrix(basis)
print("descended matrix (rank %d):" % M.rank())
for row in M.rows:
    print("   ", " ".join(f"{str(x):>10}" for x in row))
