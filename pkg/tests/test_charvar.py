import numpy as np
import pytest

from projsymp import charvar as cv
from projsymp.errors import BadWord, NotACocycle


@pytest.fixture(scope="module")
def rho():
    return cv.random_representation(2, 7)


def _rand_cocycle(rho, rng):
    Z = cv.cocycle_space(rho)
    return Z @ (rng.normal(size=Z.shape[1]) + 1j * rng.normal(size=Z.shape[1]))


def test_presentation():
    p = cv.Presentation(3)
    assert len(p.relator) == 12
    for x in range(6):
        assert sorted(e for y, e in p.relator if y == x) == [-1, 1]
    with pytest.raises(ValueError):
        cv.Presentation(1)


def test_random_representation(rho):
    assert rho.relator_error() < 1e-10
    assert rho.det_error() < 1e-10
    assert rho.is_irreducible()
    M = np.array([[1, 2j], [0.5, 1 + 1j]])
    M = M / np.sqrt(np.linalg.det(M))
    assert rho.conjugate(M).relator_error() < 1e-10


def test_reducible_rejected():
    mats = [np.array([[a, b], [0, 1 / a]], dtype=complex) for a, b in [(2, 1), (3, -1), (0.5, 2), (1.5, 1)]]
    rho = cv.Representation(cv.Presentation(2), mats)
    assert not rho.is_irreducible()


def test_representation_json(rho):
    again = cv.Representation.from_json(rho.to_json())
    assert all(np.array_equal(a, b) for a, b in zip(rho.mats, again.mats))


def test_fox_derivative_rules(rho):
    assert np.allclose(cv.fox_derivative([(0, 1)], 0, rho), np.eye(3))
    assert np.allclose(cv.fox_derivative([(0, -1)], 0, rho), -np.linalg.inv(cv.Ad(rho.mats[0])))
    with pytest.raises(BadWord):
        cv.fox_derivative([(0, 1)], 9, rho)
    with pytest.raises(BadWord):
        cv.fox_derivative([(7, 1)], 0, rho)


def test_fox_product_rule(rho):
    rng = np.random.default_rng(1)
    for _ in range(10):
        u = [(int(rng.integers(4)), int(rng.choice([-1, 1]))) for _ in range(5)]
        v = [(int(rng.integers(4)), int(rng.choice([-1, 1]))) for _ in range(4)]
        for x in range(4):
            lhs = cv.fox_derivative(u + v, x, rho)
            t1 = cv.fox_derivative(u, x, rho)
            t2 = cv.Ad(rho.evaluate(u)) @ cv.fox_derivative(v, x, rho)
            # rounding in a product of matrices scales with the product of
            # the factor norms, not with the (possibly cancelled) result
            scale = np.prod([np.linalg.norm(cv.Ad(rho.letter(*l)), 2) for l in u + v])
            assert np.abs(lhs - (t1 + t2)).max() <= 1e-12 * scale


@pytest.mark.parametrize("g", [2, 3])
def test_dimensions(g):
    for seed in range(20):
        rho = cv.random_representation(g, seed)
        d = cv.cohomology_dimensions(rho)
        assert d == {"Z1": 6 * g - 3, "B1": 3, "H1": 6 * g - 6}


def test_dimensions_conjugation_invariant(rho):
    M = np.array([[2, 1], [1, 1]], dtype=complex)
    assert cv.cohomology_dimensions(rho.conjugate(M)) == cv.cohomology_dimensions(rho)


def test_coboundaries_are_cocycles(rho):
    B = cv.coboundary_space(rho)
    assert all(cv.is_cocycle(rho, B[:, j]) for j in range(3))


def test_only_closed_cycle_passes_gate(rho):
    conv, report = cv.select_convention(rho)
    assert conv == cv.DEFAULT_CONVENTION
    for c in cv.CONVENTIONS[:4]:
        assert report[c] > 1e-6


def test_pairing_vanishes_on_coboundaries(rho):
    rng = np.random.default_rng(2)
    for _ in range(5):
        u = _rand_cocycle(rho, rng)
        b = cv.coboundary(rho, rng.normal(size=3) + 1j * rng.normal(size=3))
        for p, q in ((u, b), (b, u)):
            assert abs(cv.goldman_pairing(p, q, rho)) <= 1e-8 * cv.pairing_scale(p, q, rho)


def test_pairing_rejects_non_cocycles(rho):
    rng = np.random.default_rng(3)
    with pytest.raises(NotACocycle):
        cv.goldman_pairing(rng.normal(size=12), rng.normal(size=12), rho)


def test_bilinearity_and_conjugation(rho):
    rng = np.random.default_rng(4)
    u, v, w = (_rand_cocycle(rho, rng) for _ in range(3))
    s = 0.3 - 1.2j
    lhs = cv.goldman_pairing(u + s * w, v, rho)
    rhs = cv.goldman_pairing(u, v, rho) + s * cv.goldman_pairing(w, v, rho)
    assert abs(lhs - rhs) <= 1e-12 * (cv.pairing_scale(u, v, rho) + abs(s) * cv.pairing_scale(w, v, rho))
    M = np.array([[1, 1j], [0.5, 2]])
    M = M / np.sqrt(np.linalg.det(M))
    other = cv.goldman_pairing(cv.transport_cocycle(u, M), cv.transport_cocycle(v, M), rho.conjugate(M))
    assert abs(other - cv.goldman_pairing(u, v, rho)) <= 1e-8 * cv.pairing_scale(u, v, rho)


@pytest.mark.parametrize("g", [2, 3])
def test_goldman_matrix(g):
    for seed in range(5):
        gm = cv.GoldmanMatrix.compute(cv.random_representation(g, seed))
        assert gm.dim == 6 * g - 6
        assert gm.antisymmetry_error() < 1e-8
        assert gm.rank() == gm.dim
        assert gm.det_margin_root() > 1e-2
