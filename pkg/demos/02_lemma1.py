"""The two bilinear expressions H1 and H2 agree once the trace form is
normalised by kappa = -2, both on P^1 and for the connection on the curve."""

import random

from projsymp.exact import Polynomial
from projsymp.projconn import H1_pair, H2_pair, build_connection, calibrate_kappa
from projsymp.riemann import Curve

print("kappa =", calibrate_kappa())

curve = Curve.default()
delta = build_connection(curve)
print("connection coefficient q =", delta.q)

rng = random.Random(1)
for _ in range(3):
    f = curve.function(Polynomial([rng.randint(-3, 3) for _ in range(4)]),
                       Polynomial([rng.randint(-3, 3) for _ in range(3)]))
    g = curve.function(Polynomial([rng.randint(-3, 3) for _ in range(3)]),
                       Polynomial([rng.randint(-3, 3) for _ in range(4)]))
    print("H1 == H2:", H1_pair(f, g, delta) == H2_pair(f, g, delta))
