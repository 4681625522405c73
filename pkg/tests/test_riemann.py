import random
from fractions import Fraction

import pytest

from projsymp.errors import NotSquarefree, WrongWeight
from projsymp.exact import Polynomial, RationalFunction
from projsymp.riemann import (
    INF_MINUS,
    INF_PLUS,
    Curve,
    PointSpec,
    Section,
    derive_ff,
    expand_at,
    pole_points,
    residue_at,
    section_space,
    valuation_at,
)


@pytest.fixture(scope="module")
def curve():
    return Curve.default()


def _poly(rng, deg):
    return Polynomial([rng.randint(-5, 5) for _ in range(deg + 1)])


def test_curve_validation():
    with pytest.raises(NotSquarefree):
        Curve.from_roots([0, 0, 1, 2, 3, 4])
    with pytest.raises(ValueError):
        Curve(Polynomial([1, 0, 0, 0, 0, 1]))
    assert Curve.default().branch_roots == [Fraction(i) for i in range(6)]


def test_point_json_round_trip(curve):
    for p in [INF_PLUS, INF_MINUS, PointSpec.branch(3)]:
        assert PointSpec.from_json(p.to_json()) == p
        assert curve.contains(p)
    assert not curve.contains(PointSpec.affine(7, 1))


def test_expansions_at_infinity(curve):
    w = curve.section(1, 1)
    assert expand_at(w, INF_PLUS, 4).valuation == 1
    x2 = curve.section(1, Polynomial.monomial(2))
    assert expand_at(x2, INF_PLUS, 2).valuation == -1
    assert residue_at(x2, INF_PLUS) == -1
    assert residue_at(x2, INF_MINUS) == 1
    assert expand_at(curve.section(1), INF_PLUS, 3).is_zero()


def test_y_expansion_satisfies_equation(curve):
    for p in [INF_PLUS, PointSpec.branch(2)]:
        frame = curve.frame(p)
        Y = frame.Y(10)
        fX = frame.rf(RationalFunction(curve.f), 10)
        assert (Y * Y).agrees_with(fX)


def test_holomorphic_forms_have_no_residues(curve):
    for p in [INF_PLUS, INF_MINUS] + curve.branch_points():
        assert residue_at(curve.section(1, 1), p) == 0
        assert residue_at(curve.section(1, Polynomial.x()), p) == 0


def test_residue_needs_weight_one(curve):
    with pytest.raises(WrongWeight):
        residue_at(curve.section(2, 1), INF_PLUS)


def test_residue_theorem_random_forms(curve):
    rng = random.Random(2)
    for i in range(50):
        den = Polynomial.constant(1)
        if i % 2:
            for e in rng.sample(curve.branch_roots, 2):
                den = den * Polynomial([-e, 1]) ** rng.randint(1, 3)
        w = curve.section(1, RationalFunction(_poly(rng, 5), den),
                          RationalFunction(_poly(rng, 3), den))
        assert sum(residue_at(w, p) for p in pole_points(w)) == 0


def test_residue_parameter_independence(curve):
    p = PointSpec.branch(2)
    w = curve.section(1, 0, RationalFunction(1, Polynomial([-2, 1])))
    values = {residue_at(w, p, s) for s in (1, 2, Fraction(-1, 3))}
    assert values == {2}


def test_derive_ff(curve):
    y, x = curve.y(), curve.x()
    assert derive_ff(y) == curve.function(0, RationalFunction(curve.f.derive(), curve.f * 2))
    assert derive_ff(x ** 3 if hasattr(x, "__pow__") else x * x * x) == x * x * 3
    assert derive_ff(curve.function(7)).is_zero()
    rng = random.Random(4)
    for _ in range(20):
        g = curve.function(_poly(rng, 3), _poly(rng, 2))
        h = curve.function(_poly(rng, 2), _poly(rng, 3))
        assert derive_ff(g * h) == derive_ff(g) * h + g * derive_ff(h)


def test_section_weights_add(curve):
    v = curve.section(-1, 1)
    q = curve.section(2, Polynomial.x())
    assert (v * q).k == 1
    assert (q * q.inverse()).k == 0


def test_section_json_round_trip(curve):
    s = curve.section(2, RationalFunction(Polynomial([1, 2]), Polynomial([3, 1])), Polynomial([5]))
    assert Section.from_json(curve, s.to_json()) == s


def test_section_space_dimensions(curve):
    assert len(section_space(curve, 1)) == 2
    assert len(section_space(curve, 2)) == 3
    assert len(section_space(curve, -1)) == 0
    assert len(section_space(curve, 0)) == 1


def test_riemann_roch_monotone(curve):
    for k in (-1, 0, 1, 2):
        dims = [len(section_space(curve, k, {INF_PLUS: n})) for n in range(8)]
        assert all(b - a in (0, 1) for a, b in zip(dims, dims[1:]))
    dims = [len(section_space(curve, 1, {PointSpec.branch(0): n})) for n in range(5)]
    assert all(b - a in (0, 1) for a, b in zip(dims, dims[1:]))


def test_section_space_respects_bounds(curve):
    bounds = {INF_PLUS: 5, INF_MINUS: 3}
    for s in section_space(curve, 1, bounds):
        assert valuation_at(s, INF_PLUS) >= -5
        assert valuation_at(s, INF_MINUS) >= -3
