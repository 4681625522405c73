"""Flat projective structure on P^1: the operator h -> h''' kills exactly sl2,
Moebius maps commute with it, and the Schwarzian measures the failure of a map
to be Moebius."""

from fractions import Fraction

from projsymp.exact import RationalFunction
from projsymp.projconn import (
    Mobius,
    ProjectiveConnection,
    Sl2Element,
    apply_delta,
    delta_kernel_p1,
    eta2_inverse,
    jet_of,
    schwarzian,
)

z = RationalFunction.x()
flat = ProjectiveConnection.projective_line()

print("kernel of Delta on polynomial fields of degree <= 12:")
for p in delta_kernel_p1(12):
    print("   ", p, "d/dz")

print("Delta(z^3 d/dz) =", apply_delta(flat, z ** 3), "dz^2")

phi = Mobius(2, 1, 1, Fraction(3, 2))
h = z ** 4 - z * 3
lhs = apply_delta(flat, phi.push_vector_field(h))
rhs = phi.push_quadratic(apply_delta(flat, h))
print("Moebius equivariance for", phi, ":", lhs == rhs)

print("S(z^2) =", schwarzian(z * z))
print("S((2z+1)/(z-3)) =", schwarzian((z * 2 + 1) / (z - 3)))

# every 2-jet of a vector field comes from a unique element of sl2
j = jet_of(z * z, 0, 2)
X = eta2_inverse(j)
print("2-jet of z^2 d/dz at 0 comes from", X, "; H =", Sl2Element(1, 0, 0).vector_field(), "d/dz")
