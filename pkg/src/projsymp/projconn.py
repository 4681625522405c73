"""Projective connections, the third-order operator they define, and jets.

Conventions fixed here and used everywhere downstream:

* Schwarzian: ``S(s) = s'''/s' - 3/2 (s''/s')^2``.
* A projective connection is a local coefficient ``q`` with
  ``q_new = (q o s) s'^2 + S(s)`` under ``old = s(new)``.  A flat (projective)
  chart has ``q = 0``.
* The operator on a vector field ``h d/dz`` is
  ``(h''' + 2 q h' + q' h) dz^2``.
* ``[[a, b], [c, -a]]`` in sl2 corresponds to the field
  ``(b + 2 a z - c z^2) d/dz``, the infinitesimal generator of the Moebius
  action ``z -> (p z + q)/(r z + s)``.  With this convention the matrix
  commutator goes to minus the bracket of vector fields.

Functions taking a "coefficient" accept anything closed under ``+``, ``*``
and ``.derive()``: polynomials and rational functions in a chart of the
projective line, or weight-0 sections (function-field elements) of a curve.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import BasePointMismatch, DegenerateMap, NotSquarefree, ProjSympError, WrongWeight
from .exact import (
    LaurentSeries,
    Polynomial,
    RationalFunction,
    RationalMatrix,
    as_rational,
    kernel_basis,
    rational_to_str,
)
from .riemann import INF_MINUS, INF_PLUS, Curve, PointSpec, Section, expand_at


def _rf(v) -> RationalFunction:
    return v if isinstance(v, RationalFunction) else RationalFunction(v)


# ---------------------------------------------------------------------------
# Schwarzian and Moebius maps


def schwarzian(sigma) -> RationalFunction:
    sigma = _rf(sigma)
    d1 = sigma.derive()
    if d1.is_zero():
        raise DegenerateMap("Schwarzian of a constant map")
    d2 = d1.derive()
    d3 = d2.derive()
    r = d2 / d1
    return d3 / d1 - r * r * Fraction(3, 2)


def series_schwarzian(X: LaurentSeries, rel_precision: int = 16) -> LaurentSeries:
    d1 = X.derive()
    if d1.is_zero():
        raise DegenerateMap("Schwarzian of a constant map")
    d2 = d1.derive()
    d3 = d2.derive()
    inv = d1.inverse() if d1.is_exact() and len(d1.coeffs) == 1 else d1.inverse(rel_precision)
    r = d2 * inv
    return d3 * inv - r * r * Fraction(3, 2)


@dataclass(frozen=True)
class Mobius:
    """z -> (a z + b)/(c z + d) with rational entries, ad - bc != 0."""

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    def __post_init__(self):
        for name in "abcd":
            object.__setattr__(self, name, as_rational(getattr(self, name)))
        if self.a * self.d - self.b * self.c == 0:
            raise DegenerateMap("singular Moebius matrix")

    def as_function(self) -> RationalFunction:
        z = Polynomial.x()
        return RationalFunction(z * self.a + self.b, z * self.c + self.d)

    def inverse(self) -> "Mobius":
        return Mobius(self.d, -self.b, -self.c, self.a)

    def compose(self, other: "Mobius") -> "Mobius":
        """self o other."""
        a, b, c, d = self.a, self.b, self.c, self.d
        p, q, r, s = other.a, other.b, other.c, other.d
        return Mobius(a * p + b * r, a * q + b * s, c * p + d * r, c * q + d * s)

    def push_vector_field(self, h) -> RationalFunction:
        """Coefficient in w = phi(z) of the pushforward of h(z) d/dz."""
        phi = self.as_function()
        return (_rf(h) * phi.derive())(self.inverse().as_function())

    def push_quadratic(self, r) -> RationalFunction:
        """Coefficient in w of the quadratic differential r(z) dz^2."""
        psi = self.inverse().as_function()
        d = psi.derive()
        return _rf(r)(psi) * d * d


# ---------------------------------------------------------------------------
# sl2 and jets


@dataclass(frozen=True)
class Sl2Element:
    """Traceless matrix [[alpha, beta], [gamma, -alpha]]."""

    alpha: Fraction
    beta: Fraction
    gamma: Fraction

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))

    @classmethod
    def from_matrix(cls, m) -> "Sl2Element":
        (a, b), (c, d) = m
        if as_rational(a) + as_rational(d) != 0:
            raise ValueError("matrix is not traceless")
        return cls(a, b, c)

    def matrix(self) -> tuple:
        return ((self.alpha, self.beta), (self.gamma, -self.alpha))

    def vector_field(self) -> Polynomial:
        return Polynomial([self.beta, 2 * self.alpha, -self.gamma])

    def trace_product(self, other: "Sl2Element") -> Fraction:
        return (2 * self.alpha * other.alpha + self.beta * other.gamma
                + self.gamma * other.beta)

    def bracket(self, other: "Sl2Element") -> "Sl2Element":
        a, b, c = self.alpha, self.beta, self.gamma
        p, q, r = other.alpha, other.beta, other.gamma
        # [X, Y] = XY - YX for traceless 2x2 matrices
        return Sl2Element(b * r - c * q, 2 * (a * q - b * p), 2 * (c * p - a * r))

    def __add__(self, other):
        return Sl2Element(self.alpha + other.alpha, self.beta + other.beta, self.gamma + other.gamma)

    def __mul__(self, c):
        return Sl2Element(self.alpha * c, self.beta * c, self.gamma * c)

    __rmul__ = __mul__


def vector_field_bracket(f, g):
    """Coefficient of [f d/dz, g d/dz] = (f g' - g f') d/dz."""
    return f * g.derive() - g * f.derive()


@dataclass(frozen=True)
class Jet:
    """Derivatives (h, h', ..., h^(n)) of a local coefficient at ``base``."""

    base: Fraction
    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "base", as_rational(self.base))
        object.__setattr__(self, "values", tuple(as_rational(v) for v in self.values))

    @property
    def order(self) -> int:
        return len(self.values) - 1

    def p0(self) -> Fraction:
        return self.values[0]

    def truncate(self, n: int) -> "Jet":
        return Jet(self.base, self.values[: n + 1])

    def __add__(self, other: "Jet") -> "Jet":
        _same_base(self, other)
        return Jet(self.base, tuple(a + b for a, b in zip(self.values, other.values)))

    def __mul__(self, c) -> "Jet":
        return Jet(self.base, tuple(a * c for a in self.values))

    __rmul__ = __mul__


def _same_base(u: Jet, v: Jet):
    if u.base != v.base:
        raise BasePointMismatch(f"jets based at {u.base} and {v.base}")


def jet_of(h, z0, order: int) -> Jet:
    """The order-n jet of a polynomial / rational coefficient at z0."""
    h = _rf(h)
    vals = []
    for _ in range(order + 1):
        vals.append(h(as_rational(z0)))
        h = h.derive()
    return Jet(z0, tuple(vals))


def eta(X: Sl2Element, z0, n: int) -> Jet:
    """Restriction of the global field of X to its n-jet at z0."""
    return jet_of(X.vector_field(), z0, n)


def beta(j: Jet) -> Jet:
    """J^3 -> J^2."""
    return j.truncate(2)


def alpha_jet(c, z0) -> Jet:
    """K^2 -> J^3: the 3-jet with vanishing 2-jet and third derivative c."""
    return Jet(z0, (0, 0, 0, c))


def adapted_jet(j: Jet, q0=0) -> Jet:
    """2-jet read in a flat chart osculating the connection with value q0 at the base.

    The chart w(z) with w(z0)=0, w'=1, w''=0, w'''=q0 has Schwarzian q0 at z0;
    pushing the field forward changes only the second derivative.
    """
    h0, h1, h2 = j.values[:3]
    return Jet(j.base, (h0, h1, h2 + as_rational(q0) * h0))


def eta2_inverse(j: Jet, q0=0) -> Sl2Element:
    """The sl2 element whose field has the given 2-jet (in the connection-adapted frame)."""
    if j.order < 2:
        raise ValueError("need a 2-jet")
    a = adapted_jet(j, q0)
    h0, h1, h2 = a.values
    z0 = j.base if q0 == 0 else Fraction(0)
    gamma = -h2 / 2
    alpha = (h1 + 2 * gamma * z0) / 2
    b = h0 - 2 * alpha * z0 + gamma * z0 * z0
    return Sl2Element(alpha, b, gamma)


def delta_jet(j: Jet, q0=0, q1=0) -> Fraction:
    """Value at the base of the operator on a 3-jet: h3 + 2 q h1 + q' h0."""
    if j.order < 3:
        raise ValueError("need a 3-jet")
    h0, h1, _, h3 = j.values[:4]
    return h3 + 2 * as_rational(q0) * h1 + as_rational(q1) * h0


# ---------------------------------------------------------------------------
# the operator


def delta_coefficient(h, q=0):
    """h''' + 2 q h' + q' h for a local coefficient h and connection coefficient q."""
    d1 = h.derive()
    d3 = d1.derive().derive()
    if isinstance(q, (int, Fraction)) and q == 0:
        return d3
    return d3 + q * d1 * 2 + q.derive() * h


class ProjectiveConnection:
    """Coefficient q of a projective structure in the x-chart of a curve,
    or in the affine chart of the projective line (``curve is None``)."""

    def __init__(self, q, curve: Curve | None = None, family_params=None, family=None):
        self.q = _rf(q)
        self.curve = curve
        self.family_params = tuple(as_rational(c) for c in (family_params or ()))
        self.family = family
        if curve is not None:
            self._q_ff = curve.function(self.q)
        else:
            self._q_ff = self.q

    @classmethod
    def projective_line(cls) -> "ProjectiveConnection":
        return cls(0)

    @property
    def is_flat(self) -> bool:
        return self.q.is_zero()

    def coefficient(self):
        """q as an element of the chart's function ring."""
        return self._q_ff if not self.q.is_zero() else 0

    def __eq__(self, other):
        return (isinstance(other, ProjectiveConnection) and self.q == other.q
                and self.curve == other.curve)

    def __hash__(self):
        return hash((self.q, self.curve))

    def __repr__(self):
        host = "P1" if self.curve is None else repr(self.curve)
        return f"ProjectiveConnection(q={self.q!r}, host={host})"

    def transformed(self, p: PointSpec, order: int = 4, scale=1) -> LaurentSeries:
        """q~ = (q o x)(x')^2 + S(x) in the local parameter at p."""
        frame = self.curve.frame(p, scale)
        rel = order + 16
        for _ in range(8):
            qs = frame.rf(self.q, rel) if not self.q.is_zero() else LaurentSeries.constant(0)
            out = qs * frame.dX * frame.dX + series_schwarzian(frame.X, rel)
            if out.precision >= order:
                return out.with_precision(order) if out.precision != float("inf") else out
            rel *= 2
        raise ProjSympError("could not expand transformed connection")

    def is_holomorphic(self) -> bool:
        if self.curve is None:
            return True
        pts = [INF_PLUS, INF_MINUS] + self.curve.branch_points()
        return all(self.transformed(p, 2).valuation >= 0 for p in pts)

    def to_json(self) -> dict:
        return {
            "q": self.q.to_json(),
            "curve": self.curve.to_json() if self.curve is not None else None,
            "family_params": [rational_to_str(c) for c in self.family_params],
        }


def build_connection(curve: Curve, free=None) -> ProjectiveConnection:
    """q = sum 3/(8(x-e_i)^2) + c_i/(x-e_i), holomorphic at infinity.

    The residues c_i satisfy three linear conditions; ``free`` gives the
    coordinates along the 3-dimensional kernel (default: zeros, which picks
    the particular solution with free variables set to 0).
    """
    roots = curve.branch_roots
    if len(roots) != 6:
        raise NotSquarefree("build_connection needs six distinct rational branch points")
    rows = [[1] * 6, list(roots), [e * e for e in roots]]
    rhs = [0, Fraction(-9, 4), -sum(Fraction(3, 4) * e for e in roots)]
    m = RationalMatrix(rows, 6)
    part = m.solve(rhs)
    if part is None:
        raise ProjSympError("inconsistent residue system")
    ker = kernel_basis(m)
    c = list(part)
    for t, v in zip(free or (), ker):
        c = [ci + as_rational(t) * vi for ci, vi in zip(c, v)]
    x = Polynomial.x()
    q = RationalFunction(0)
    for e, ci in zip(roots, c):
        lin = x - e
        q = q + RationalFunction(Fraction(3, 8), lin * lin) + RationalFunction(ci, lin)
    return ProjectiveConnection(q, curve, c, ker)


# ---------------------------------------------------------------------------


def apply_delta(delta: ProjectiveConnection, theta):
    """The operator on a vector field.

    ``theta`` is either a weight -1 section of the connection's curve (result:
    weight 2 section) or the d/dz coefficient of a field on the projective line
    (result: the dz^2 coefficient).
    """
    if isinstance(theta, Section):
        if theta.k != -1:
            raise WrongWeight(f"apply_delta needs a vector field (weight -1), got {theta.k}")
        fast = _apply_delta_polynomial(delta, theta)
        if fast is not None:
            return fast
        H = theta.dx_coefficient()
        R = delta_coefficient(H, delta.coefficient())
        return Section.from_dx_coefficient(R, 2)
    return delta_coefficient(_rf(theta), delta.coefficient())


class _OverF:
    """(a + b y) / f^n with polynomial a, b; derivatives never need a gcd."""

    __slots__ = ("a", "b", "n")

    def __init__(self, a: Polynomial, b: Polynomial, n: int):
        self.a, self.b, self.n = a, b, n

    def lift(self, n: int) -> "_OverF":
        if n == self.n:
            return self
        fk = _OverF.f ** (n - self.n)
        return _OverF(self.a * fk, self.b * fk, n)

    def __add__(self, other: "_OverF") -> "_OverF":
        n = max(self.n, other.n)
        u, v = self.lift(n), other.lift(n)
        return _OverF(u.a + v.a, u.b + v.b, n)

    def scale(self, p: Polynomial, extra: int) -> "_OverF":
        """Multiply by p / f^extra (p a polynomial in x)."""
        return _OverF(self.a * p, self.b * p, self.n + extra)

    def derive(self) -> "_OverF":
        f, df, n = _OverF.f, _OverF.df, self.n
        a = self.a.derive() * f - self.a * df * n
        b = self.b.derive() * f + self.b * df * (Fraction(1, 2) - n)
        return _OverF(a, b, n + 1)


def _apply_delta_polynomial(delta: ProjectiveConnection, theta: Section):
    """Fast path when theta is polynomial and q has denominator dividing f^2."""
    curve = delta.curve
    if curve is None or not theta.is_polynomial():
        return None
    f = curve.f
    q = delta.q
    if not q.is_zero():
        quo, rem = divmod(f * f, q.den)
        if not rem.is_zero():
            return None
        Q = q.num * quo  # q = Q / f^2
    _OverF.f, _OverF.df = f, curve.df
    g0 = theta.r0.num * (1 / theta.r0.den.lc)
    g1 = theta.r1.num * (1 / theta.r1.den.lc)
    # theta = (g0 + g1 y) y d/dx  ->  H = g1 f + g0 y
    H = _OverF(g1 * f, g0, 0)
    d1 = H.derive()
    out = d1.derive().derive()
    if not q.is_zero():
        dQ = Q.derive()
        out = out + d1.scale(Q * 2, 2)
        # q' = (Q' f - 2 Q f') / f^3
        out = out + H.scale(dQ * f - Q * curve.df * 2, 3)
    # R dx^2 = R f (dx/y)^2: weight-2 function part is (a + b y) f / f^n
    n = out.n - 1
    fn = f ** n if n > 0 else Polynomial.constant(1)
    a, ra = divmod(out.a, fn)
    b, rb = divmod(out.b, fn)
    if n < 0:
        a, b = out.a * f, out.b * f
    elif not (ra.is_zero() and rb.is_zero()):
        return Section(curve, 2, RationalFunction(out.a, fn), RationalFunction(out.b, fn))
    return Section(curve, 2, RationalFunction(a), RationalFunction(b))


def apply_delta_local(delta: ProjectiveConnection, theta: Section, p: PointSpec, order: int,
                      scale=1) -> LaurentSeries:
    """The operator computed directly in the local parameter at p, using q~."""
    frame = delta.curve.frame(p, scale)
    rel = order + 24
    H = theta.dx_coefficient()
    from .riemann import _expand_function

    Hs = _expand_function(H, frame, rel)
    h = Hs * frame.dX.inverse(rel) if not (frame.dX.is_exact() and len(frame.dX.coeffs) == 1) \
        else Hs * frame.dX.inverse()
    qt = delta.transformed(p, order + 8, scale)
    return delta_coefficient(h, qt).with_precision(order)


def one_form(value, like):
    """Turn a pointwise coefficient into a one-form in the same chart."""
    if isinstance(like, Section):
        return Section.from_dx_coefficient(value, 1)
    return value


def H1_pair(f, g, delta: ProjectiveConnection | None = None):
    """f Delta(g) + g Delta(f), contracted to a one-form."""
    q = delta.coefficient() if delta is not None else 0
    val = f * delta_coefficient(g, q) + g * delta_coefficient(f, q)
    return one_form(val, f)


def h1_jets(v: Jet, w: Jet, q0=0, q1=0) -> Fraction:
    """Pointwise H1 on two 3-jets at a common base."""
    _same_base(v, w)
    return v.p0() * delta_jet(w, q0, q1) + w.p0() * delta_jet(v, q0, q1)


def _sl2_of_field(h, coord, q):
    """Entries (alpha, beta, gamma) of eta2_inverse of the moving 2-jet of h."""
    h1 = h.derive()
    h2 = h1.derive()
    if not (isinstance(q, (int, Fraction)) and q == 0):
        h2 = h2 + q * h
        coord = 0
    gamma = h2 * Fraction(-1, 2)
    alpha = (h1 + gamma * coord * 2) * Fraction(1, 2)
    b = h - alpha * coord * 2 + gamma * coord * coord
    return alpha, b, gamma


def raw_trace_field(f, g, delta: ProjectiveConnection | None = None, coord=None):
    """z -> trace(eta2_inverse(j^2 f(z)) eta2_inverse(j^2 g(z))) as a function."""
    q = delta.coefficient() if delta is not None else 0
    if coord is None:
        coord = f.curve.x() if isinstance(f, Section) else RationalFunction.x()
    a1, b1, c1 = _sl2_of_field(f, coord, q)
    a2, b2, c2 = _sl2_of_field(g, coord, q)
    return a1 * a2 * 2 + b1 * c2 + c1 * b2


@lru_cache(maxsize=None)
def calibrate_kappa() -> Fraction:
    """Scalar making H2 = H1 on (z^3, z^3) over the flat projective line."""
    z3 = RationalFunction(Polynomial.monomial(3))
    h1 = H1_pair(z3, z3)
    raw = raw_trace_field(z3, z3).derive()
    ratio = h1 / raw
    if not ratio.is_polynomial() or ratio.num.degree > 0:
        raise ProjSympError(f"calibration ratio is not constant: {ratio!r}")
    return ratio.num[0]


def kappa() -> Fraction:
    return calibrate_kappa()


def trace_form(u: Jet, v: Jet, q0=0) -> Fraction:
    """kappa * trace(eta2_inverse(u) eta2_inverse(v))."""
    _same_base(u, v)
    return kappa() * eta2_inverse(u, q0).trace_product(eta2_inverse(v, q0))


def H2_pair(f, g, delta: ProjectiveConnection | None = None):
    """d of the function z -> trace_form(j^2 f(z), j^2 g(z))."""
    t = raw_trace_field(f, g, delta) * kappa()
    return one_form(t.derive(), f)


def delta_kernel_p1(max_degree: int = 12) -> list:
    """Kernel of the flat operator on polynomial fields of degree <= max_degree."""
    cols = []
    for i in range(max_degree + 1):
        img = delta_coefficient(Polynomial.monomial(i))
        cols.append([img[j] for j in range(max_degree + 1)])
    m = RationalMatrix(list(zip(*cols)), max_degree + 1)
    return [Polynomial(v) for v in kernel_basis(m)]
