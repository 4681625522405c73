import random
from fractions import Fraction

import pytest

from projsymp.cech import (
    CechCocycle,
    CechModel,
    Geometry,
    alpha1,
    compute_h1_basis,
    descended_form,
    h1_sections,
    literal_pairing,
    pairing,
    pairing_matrix,
    swapped_pairing,
    theorem1_mechanics,
)
from projsymp.errors import GeometryMismatch, NotGlobal, UnstableTruncation
from projsymp.exact import Polynomial, RationalMatrix
from projsymp.projconn import H1_pair, build_connection
from projsymp.riemann import Curve


@pytest.fixture(scope="module")
def model():
    return CechModel(Curve.default(), N=10)


@pytest.fixture(scope="module")
def basis(model):
    return model.h1_basis()


def test_dimensions(model, basis):
    assert len(model.global_quadratic) == 3
    assert len(model.h1_tangent()[0]) == 3
    assert basis.dim == 6
    assert basis.vertical_indices == (0, 1, 2)


def test_basis_cocycles_are_cocycles(basis):
    assert all(c.is_cocycle() for c in basis.representatives)


def test_coboundaries_are_cocycles(model):
    rng = random.Random(0)
    for _ in range(5):
        _, c = model.random_coboundary(rng)
        assert c.is_cocycle()
        assert all(x == 0 for x in model.h1_basis().coordinates(c))


def test_alpha1(model):
    g = model.geometry
    for w in model.global_quadratic:
        c = alpha1(w, g)
        assert c.is_cocycle()
        assert all(x == 0 for x in model.alpha2(c))
    with pytest.raises(NotGlobal):
        alpha1(model.omega_a_basis[-1], g)


def test_alpha2_surjective(model, basis):
    m = RationalMatrix([list(model.alpha2(c)) for c in basis.representatives])
    assert m.rank() == 3


def test_vertical_pairs_vanish(model):
    g = model.geometry
    v = [alpha1(w, g) for w in model.global_quadratic]
    assert all(pairing(a, b) == 0 for a in v for b in v)


def test_theorem1_both_slots(model):
    rng = random.Random(12)
    for _ in range(15):
        _, cob = model.random_coboundary(rng)
        _, c = model.random_cocycle(rng)
        assert pairing(cob, c) == 0
        assert pairing(c, cob) == 0


def test_plus_sign_variant_fails_theorem1(model):
    rng = random.Random(13)
    values = []
    for _ in range(5):
        _, cob = model.random_coboundary(rng)
        _, c = model.random_cocycle(rng)
        values.append(literal_pairing(cob, c))
    assert any(v != 0 for v in values)


def test_theorem1_mechanics(model):
    rng = random.Random(14)
    (ca, cb), _ = model.random_coboundary(rng)
    _, c = model.random_cocycle(rng)
    mech = theorem1_mechanics(model, model.coboundary(ca, cb), c)
    assert mech["res_theta_a_omega_a"] == 0
    assert mech["res_theta_b_omega_b"] == 0
    assert mech["res_H1"] == 0 and mech["res_H2"] == 0
    assert mech["H1_equals_H2"]


def test_h1_sections_matches_coefficient_formula(model):
    t1, t2 = model.theta_basis[3], model.theta_basis[7]
    lhs = h1_sections(model.delta, t1, t2)
    assert lhs == H1_pair(t1.dx_coefficient(), t2.dx_coefficient(), model.delta)


def test_bilinearity(model, basis):
    a, b, c = basis.representatives[:3]
    d = basis.representatives[4]
    q = Fraction(-3, 7)
    assert pairing(a * q + b, d) == q * pairing(a, d) + pairing(b, d)
    assert pairing(d, a + c * 2) == pairing(d, a) + 2 * pairing(d, c)


def test_descended_form(model, basis):
    M = descended_form(basis, model, seed=3, shifts=2)
    n = basis.dim
    assert all(M[i, j] == -M[j, i] for i in range(n) for j in range(n))
    assert M.rank() == 6
    assert all(M[i, j] == 0 for i in basis.vertical_indices for j in basis.vertical_indices)


def test_role_swap(basis):
    reps = basis.representatives
    for i, j in [(0, 3), (3, 5), (4, 1)]:
        assert swapped_pairing(reps[i], reps[j]) == pairing(reps[i], reps[j])
    assert pairing(reps[0], reps[3]) != 0


def test_class_alternation(model, basis):
    rng = random.Random(16)
    reps = basis.representatives
    for _ in range(3):
        c = reps[0] * rng.randint(-3, 3)
        for r in reps[1:]:
            c = c + r * rng.randint(-3, 3)
        assert pairing(c, c) == 0


def test_stabilization():
    curve = Curve.default()
    delta = build_connection(curve)
    b10 = compute_h1_basis(curve, delta, 10)
    b12 = CechModel(curve, delta, 12).h1_basis()
    assert b10.dim == b12.dim == 6
    assert pairing_matrix(b12).rank() == 6


def test_unstable_truncation_error_carries_suggestion(monkeypatch):
    import projsymp.cech as cech

    class Fake:
        def __init__(self, curve, delta, N):
            self.delta, self.N = delta, N

        def h1_basis(self):
            return type("B", (), {"dim": self.N})()

    monkeypatch.setattr(cech, "CechModel", Fake)
    with pytest.raises(UnstableTruncation) as info:
        cech.compute_h1_basis(Curve.default(), None, 6)
    assert info.value.suggested == 10


def test_geometry_mismatch(model, basis):
    other_curve = Curve(Curve.default().f + Polynomial([1]))
    g2 = Geometry(other_curve, build_connection(Curve.default()))
    c = basis.representatives[0]
    foreign = CechCocycle(c.theta, c.omega_a, c.omega_b, g2)
    with pytest.raises(GeometryMismatch):
        pairing(c, foreign)


def test_cocycle_check_rejects_wrong_difference(basis):
    c = basis.representatives[4]
    broken = CechCocycle(c.theta, c.omega_a, c.omega_a, c.geometry)
    assert not broken.is_cocycle()
