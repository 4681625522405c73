import random
from fractions import Fraction

import pytest

from projsymp.errors import BasePointMismatch, DegenerateMap
from projsymp.exact import Polynomial, RationalFunction
from projsymp.projconn import (
    H1_pair,
    H2_pair,
    Jet,
    Mobius,
    ProjectiveConnection,
    Sl2Element,
    apply_delta,
    apply_delta_local,
    beta,
    build_connection,
    calibrate_kappa,
    delta_coefficient,
    delta_kernel_p1,
    eta,
    eta2_inverse,
    h1_jets,
    jet_of,
    schwarzian,
    trace_form,
    vector_field_bracket,
)
from projsymp.riemann import INF_MINUS, INF_PLUS, Curve, PointSpec, expand_at

Z = RationalFunction.x()
P1 = ProjectiveConnection.projective_line()


def _poly(rng, deg):
    return RationalFunction(Polynomial([rng.randint(-6, 6) for _ in range(deg + 1)]))


def _mobius(rng):
    while True:
        a, b, c, d = (Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(4))
        if a * d != b * c:
            return Mobius(a, b, c, d)


@pytest.fixture(scope="module")
def curve():
    return Curve.default()


@pytest.fixture(scope="module")
def delta(curve):
    return build_connection(curve)


# -- Schwarzian and Moebius maps ----------------------------------------------


def test_schwarzian_examples():
    assert schwarzian((Z * 2 + 1) / (Z - 3)).is_zero()
    assert schwarzian(Z * Z) == RationalFunction(Fraction(-3, 2), Polynomial.monomial(2))
    with pytest.raises(DegenerateMap):
        schwarzian(RationalFunction(5))


def test_schwarzian_cocycle_law():
    rng = random.Random(8)
    for _ in range(20):
        sigma = _poly(rng, 3)
        if sigma.derive().is_zero():
            continue
        tau = _mobius(rng).as_function() if rng.random() < 0.5 else _poly(rng, 2)
        if tau.derive().is_zero():
            continue
        dt = tau.derive()
        assert schwarzian(sigma(tau)) == schwarzian(sigma)(tau) * dt * dt + schwarzian(tau)


def test_mobius_group_law():
    rng = random.Random(1)
    m, n = _mobius(rng), _mobius(rng)
    assert m.compose(n).as_function() == m.as_function()(n.as_function())
    assert m.compose(m.inverse()).as_function() == Z


# -- the flat operator ----------------------------------------------------------


def test_flat_operator_examples():
    assert apply_delta(P1, Z ** 3) == RationalFunction(6)
    assert apply_delta(P1, Z * Z).is_zero()


def test_flat_kernel_is_sl2():
    ker = delta_kernel_p1(12)
    assert len(ker) == 3
    assert all(p.degree <= 2 for p in ker)


def test_mobius_equivariance():
    inv = Mobius(0, 1, 1, 0)
    assert inv.push_quadratic(apply_delta(P1, Z ** 3)) == RationalFunction(6, Polynomial.monomial(4))
    assert apply_delta(P1, inv.push_vector_field(Z ** 3)) == RationalFunction(6, Polynomial.monomial(4))
    rng = random.Random(9)
    for _ in range(100):
        phi = _mobius(rng)
        h = _poly(rng, rng.randint(0, 6))
        assert apply_delta(P1, phi.push_vector_field(h)) == phi.push_quadratic(apply_delta(P1, h))


# -- sl2 and jets -------------------------------------------------------------------


def test_eta2_inverse_examples():
    assert eta2_inverse(Jet(0, (1, 0, 0))) == Sl2Element(0, 1, 0)
    assert eta2_inverse(jet_of(Z * Z, 0, 2)) == Sl2Element(0, 0, -1)


def test_eta2_round_trip_and_splitting():
    rng = random.Random(5)
    for _ in range(100):
        z0 = Fraction(rng.randint(-7, 7), rng.randint(1, 4))
        j = Jet(z0, tuple(Fraction(rng.randint(-9, 9)) for _ in range(3)))
        X = eta2_inverse(j)
        assert eta(X, z0, 2) == j
        assert beta(eta(X, z0, 3)) == j


def test_lie_compatibility_is_anti_homomorphism():
    basis = [Sl2Element(1, 0, 0), Sl2Element(0, 1, 0), Sl2Element(0, 0, 1)]
    for X in basis:
        for Y in basis:
            lhs = X.bracket(Y).vector_field()
            assert lhs == vector_field_bracket(Y.vector_field(), X.vector_field())


def test_trace_form_examples():
    k = calibrate_kappa()
    assert k == -2
    d = Jet(0, (1, 0, 0))
    z2 = jet_of(Z * Z, 0, 2)
    assert trace_form(d, d) == 0
    assert trace_form(d, z2) == -k
    rng = random.Random(2)
    for _ in range(20):
        u = Jet(1, tuple(Fraction(rng.randint(-5, 5)) for _ in range(3)))
        v = Jet(1, tuple(Fraction(rng.randint(-5, 5)) for _ in range(3)))
        assert trace_form(u, v) == trace_form(v, u)
    with pytest.raises(BasePointMismatch):
        trace_form(Jet(0, (1, 0, 0)), Jet(1, (1, 0, 0)))


def test_h1_examples():
    z3, z4 = Z ** 3, Z ** 4
    assert H1_pair(z3, z3) == z3 * 12
    assert H1_pair(z3, z4) == z4 * 30
    assert H1_pair(Z, Z * Z + 1).is_zero()
    assert h1_jets(jet_of(z3, 2, 3), jet_of(z3, 2, 3)) == 96


def test_h2_examples():
    assert H2_pair(Z ** 3, Z ** 3) == Z ** 3 * 12
    assert H2_pair(Z, Z * Z - 3).is_zero()


def test_lemma1_flat():
    rng = random.Random(21)
    for _ in range(100):
        f, g = _poly(rng, rng.randint(0, 8)), _poly(rng, rng.randint(0, 8))
        assert H1_pair(f, g) == H2_pair(f, g)


def test_lemma1_with_rational_connection():
    rng = random.Random(22)
    q = RationalFunction(Polynomial([1, 2]), Polynomial([3, 0, 1]))
    delta = ProjectiveConnection(q)
    for _ in range(10):
        f, g = _poly(rng, 4), _poly(rng, 5)
        assert H1_pair(f, g, delta) == H2_pair(f, g, delta)


# -- the connection on the curve ---------------------------------------------------


def test_connection_is_holomorphic(delta, curve):
    assert delta.is_holomorphic()
    for p in [INF_PLUS, INF_MINUS] + curve.branch_points():
        assert delta.transformed(p, 2).valuation >= 0


def test_connection_family(curve):
    base = build_connection(curve)
    other = build_connection(curve, free=(1, -2, 3))
    assert other.is_holomorphic()
    assert other != base
    # two connections differ by a global quadratic differential
    diff = curve.function(other.q - base.q)
    from projsymp.riemann import Section, section_space
    quad = Section.from_dx_coefficient(diff, 2)
    assert len(section_space(curve, 2)) == 3
    for p in [INF_PLUS, INF_MINUS] + curve.branch_points():
        assert expand_at(quad, p, 0).is_zero()


def test_branch_point_constant_term(delta, curve):
    e = Fraction(0)
    qt = delta.transformed(PointSpec.branch(e), 4)
    assert qt.valuation >= 0
    # no odd terms and the leading coefficient is 4 c f'(e) times the residue c of q
    c = (delta.q * RationalFunction(Polynomial([-e, 1]) ** 2)).derive()(e)
    assert qt.coefficient(0) == 4 * c * curve.f.derive()(e)
    assert qt.coefficient(1) == 0


def test_apply_delta_chart_consistency(delta, curve):
    rng = random.Random(4)
    theta = curve.section(-1, _poly(rng, 3).num, _poly(rng, 2).num)
    for p in [PointSpec.branch(3), INF_PLUS]:
        lhs = expand_at(apply_delta(delta, theta), p, 5)
        assert lhs.agrees_with(apply_delta_local(delta, theta, p, 5))


def test_fast_path_matches_general(delta, curve):
    rng = random.Random(6)
    from projsymp.riemann import Section
    for _ in range(3):
        theta = curve.section(-1, _poly(rng, 4).num, _poly(rng, 3).num)
        H = theta.dx_coefficient()
        slow = Section.from_dx_coefficient(delta_coefficient(H, delta.coefficient()), 2)
        assert apply_delta(delta, theta) == slow


def test_lemma1_on_curve(delta, curve):
    rng = random.Random(7)
    for _ in range(10):
        f = curve.function(_poly(rng, 3).num, _poly(rng, 2).num)
        g = curve.function(_poly(rng, 2).num, _poly(rng, 3).num)
        assert H1_pair(f, g, delta) == H2_pair(f, g, delta)


def test_connection_json(delta):
    data = delta.to_json()
    assert set(data) == {"q", "curve", "family_params"}
    assert len(data["family_params"]) == 6
