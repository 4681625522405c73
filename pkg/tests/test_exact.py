import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from projsymp.errors import InsufficientPrecision, NotASquare
from projsymp.exact import (
    LaurentSeries,
    Polynomial,
    RationalFunction,
    RationalMatrix,
    derive,
    kernel_basis,
    rational_from_str,
    rational_to_str,
    residue,
    series_sqrt,
)

rationals = st.fractions(min_value=-1000, max_value=1000, max_denominator=50)
polys = st.lists(rationals, max_size=6).map(Polynomial)
nonzero_polys = st.builds(lambda cs, lead: Polynomial(cs + [lead]), st.lists(rationals, max_size=5),
                          rationals.filter(lambda q: q != 0))


def _series(coeffs, v=0, prec=None):
    s = LaurentSeries(v, coeffs)
    return s if prec is None else s.with_precision(prec)


# -- rationals and polynomials ----------------------------------------------


def test_rational_string_round_trip():
    for q in (Fraction(0), Fraction(-3, 7), Fraction(5)):
        assert rational_from_str(rational_to_str(q)) == q
    assert rational_to_str(Fraction(5)) == "5/1"


@settings(max_examples=60, deadline=None)
@given(polys, polys, polys)
def test_polynomial_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a


@settings(max_examples=60, deadline=None)
@given(polys, nonzero_polys)
def test_polynomial_division(a, b):
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.is_zero() or r.degree < b.degree


def test_zero_polynomial_degree_sentinel():
    assert Polynomial([]).degree < 0
    assert Polynomial([0, 0]).is_zero()


@settings(max_examples=40, deadline=None)
@given(polys, nonzero_polys, polys, nonzero_polys)
def test_rational_function_field(a, b, c, d):
    f, g = RationalFunction(a, b), RationalFunction(c, d)
    assert (f + g) - g == f
    assert f.den.lc == 1
    assert f.num.gcd(f.den).degree == 0
    if not g.is_zero():
        assert (f * g) / g == f


def test_derivative_examples():
    z3 = Polynomial.monomial(3)
    assert derive(z3) == Polynomial([0, 0, 3])
    assert derive(Polynomial.constant(7)).is_zero()
    f = RationalFunction(1, Polynomial([-2, 1]))
    assert derive(f) == RationalFunction(-1, Polynomial([-2, 1]) ** 2)


def test_rational_function_composition():
    x = RationalFunction.x()
    f = RationalFunction(Polynomial([1, 0, 1]), Polynomial([0, 1]))
    g = (x + 1) / (x - 2)
    assert f(g) == g * g / g + 1 / g
    assert f(Fraction(2)) == Fraction(5, 2)


# -- series ------------------------------------------------------------------


def test_sqrt_binomial():
    s = series_sqrt(_series([1, 1], prec=4))
    assert s.agrees_with(_series([1, Fraction(1, 2), Fraction(-1, 8), Fraction(1, 16)], prec=4))
    assert series_sqrt(LaurentSeries.constant(1)) == LaurentSeries.constant(1)


def test_sqrt_with_even_valuation():
    s = _series([1, 1], v=2, prec=8)
    t = series_sqrt(s)
    assert t.valuation == 1
    assert (t * t).agrees_with(s)


def test_sqrt_errors():
    with pytest.raises(NotASquare):
        series_sqrt(_series([1, 1], v=1, prec=5))
    with pytest.raises(NotASquare):
        series_sqrt(_series([2, 1], prec=5))


def test_sqrt_random_unit_series():
    rng = random.Random(11)
    for _ in range(200):
        c = [1] + [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(7)]
        s = _series(c, prec=8)
        t = series_sqrt(s)
        assert (t * t).agrees_with(s)
        assert t.leading == 1


def test_residue_examples():
    assert residue(LaurentSeries.monomial(-1)) == 1
    assert residue(_series([3, 5, 7], v=-2)) == 5
    with pytest.raises(InsufficientPrecision):
        residue(_series([3], v=-3, prec=-1))


def test_residue_of_derivative_vanishes():
    rng = random.Random(5)
    for _ in range(100):
        v = rng.randint(-6, 2)
        g = _series([rng.randint(-9, 9) for _ in range(8)], v=v, prec=v + 8)
        assert residue(derive(g)) == 0


def test_series_precision_is_pessimistic():
    a = _series([1, 2, 3], prec=3)
    b = _series([1, 1], v=1, prec=5)
    assert (a + b).precision == 3
    assert (a * b).precision == 4
    assert derive(a).precision == 2
    with pytest.raises(InsufficientPrecision):
        a.coefficient(5)


def test_series_inverse():
    a = _series([2, 1, -3], prec=6)
    assert (a * a.inverse()).agrees_with(LaurentSeries.constant(1, precision=6))


def test_series_json_round_trip():
    a = _series([Fraction(1, 3), 0, 5], v=-2, prec=4)
    assert LaurentSeries.from_json(a.to_json()) == a


# -- linear algebra -----------------------------------------------------------


def test_kernel_examples():
    (v,) = kernel_basis(RationalMatrix([[1, 1], [2, 2]]))
    assert v[0] == -v[1] != 0
    assert kernel_basis(RationalMatrix.identity(3)) == []


def test_kernel_random_rank_8():
    rng = random.Random(3)
    for _ in range(5):
        m = RationalMatrix([[rng.randint(-5, 5) for _ in range(12)] for _ in range(8)])
        ker = kernel_basis(m)
        assert m.rank() + len(ker) == 12
        for v in ker:
            assert all(x == 0 for x in m.apply(v))
        assert RationalMatrix(ker).rank() == len(ker)


def test_solve_and_det():
    m = RationalMatrix([[2, 1], [1, 3]])
    assert m.det() == 5
    x = m.solve([3, 5])
    assert m.apply(x) == (3, 5)
    assert RationalMatrix([[1, 1], [1, 1]]).solve([0, 1]) is None
