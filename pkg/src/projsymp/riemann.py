"""Genus-2 hyperelliptic curves y^2 = f(x) with deg f = 6.

A weight-k section is stored as ``(r0(x) + r1(x) y) (dx/y)^k``; weight -1
sections are vector fields, 0 functions, 1 one-forms, 2 quadratic
differentials.  Expansions at points use the local parameters

* ``s`` with ``x = 1/(scale*s)`` and ``y = +-s^-3 u(s)`` at the two points at infinity,
* ``t`` with ``x = e + c t^2``, ``c = f'(e) scale^2`` at a branch point ``(e, 0)``,
* ``s`` with ``x = x0 + scale*s`` at an ordinary point ``(x0, y0)``.

The branch parameter is rescaled by ``f'(e)`` so that the expansion of
``y`` stays rational.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .errors import InsufficientPrecision, NotSquarefree, WrongWeight
from .exact import (
    INF,
    LaurentSeries,
    Polynomial,
    RationalFunction,
    RationalMatrix,
    as_rational,
    kernel_basis,
    rational_from_str,
    rational_sqrt,
    rational_to_str,
)

_ONE = Polynomial.constant(1)


def _rf(v) -> RationalFunction:
    if isinstance(v, RationalFunction):
        return v
    return RationalFunction(v)


@dataclass(frozen=True)
class PointSpec:
    """A point of the curve: ``affine``, ``branch``, ``inf+`` or ``inf-``."""

    kind: str
    x: Fraction | None = None
    y: Fraction | None = None

    @classmethod
    def affine(cls, x0, y0) -> "PointSpec":
        return cls("affine", as_rational(x0), as_rational(y0))

    @classmethod
    def branch(cls, e) -> "PointSpec":
        return cls("branch", as_rational(e), Fraction(0))

    @property
    def is_infinite(self) -> bool:
        return self.kind in ("inf+", "inf-")

    def label(self) -> str:
        if self.is_infinite:
            return self.kind
        if self.kind == "branch":
            return f"branch({self.x})"
        return f"({self.x},{self.y})"

    def to_json(self):
        if self.is_infinite:
            return self.kind
        return {"kind": self.kind, "x": rational_to_str(self.x), "y": rational_to_str(self.y)}

    @classmethod
    def from_json(cls, data) -> "PointSpec":
        if isinstance(data, str):
            if data not in ("inf+", "inf-"):
                raise ValueError(f"unknown point tag {data!r}")
            return cls(data)
        if data["kind"] == "branch":
            return cls.branch(rational_from_str(str(data["x"])))
        return cls.affine(rational_from_str(str(data["x"])), rational_from_str(str(data["y"])))


INF_PLUS = PointSpec("inf+")
INF_MINUS = PointSpec("inf-")


def _rational_roots(f: Polynomial) -> list:
    """All rational roots of f (rational root theorem), with multiplicity ignored."""
    from math import lcm

    roots = []
    p = f
    while not p.is_zero() and p[0] == 0:
        roots.append(Fraction(0))
        p = p // Polynomial.x()
    if p.degree <= 0:
        return roots
    den = lcm(*(c.denominator for c in p.coeffs))
    ints = [int(c * den) for c in p.coeffs]

    def divisors(n):
        n = abs(n)
        out = set()
        d = 1
        while d * d <= n:
            if n % d == 0:
                out.update((d, n // d))
            d += 1
        return out

    for a in sorted(divisors(ints[0])):
        for b in sorted(divisors(ints[-1])):
            for cand in (Fraction(a, b), Fraction(-a, b)):
                if cand not in roots and p(cand) == 0:
                    roots.append(cand)
    return sorted(roots)


class Curve:
    """The genus-2 curve y^2 = f(x), f monic squarefree of degree 6."""

    def __init__(self, f: Polynomial):
        if not isinstance(f, Polynomial):
            f = Polynomial(f)
        if f.degree != 6 or f.lc != 1:
            raise ValueError("f must be monic of degree 6")
        if f.gcd(f.derive()).degree > 0:
            raise NotSquarefree("f has a repeated root")
        self.f = f
        self.df = f.derive()
        self._f_rf = RationalFunction(f)
        self._df_over_2f = RationalFunction(self.df, f * 2)
        self._cache: dict = {}

    @classmethod
    def from_roots(cls, roots) -> "Curve":
        return cls(Polynomial.from_roots(roots))

    @classmethod
    def default(cls) -> "Curve":
        return cls.from_roots(range(6))

    genus = 2

    def __eq__(self, other):
        return isinstance(other, Curve) and self.f == other.f

    def __hash__(self):
        return hash(("Curve", self.f.coeffs))

    def __repr__(self):
        return f"Curve(y^2 = {self.f!r})"

    @property
    def branch_roots(self) -> list:
        if "roots" not in self._cache:
            self._cache["roots"] = _rational_roots(self.f)
        return self._cache["roots"]

    def branch_points(self) -> list:
        return [PointSpec.branch(e) for e in self.branch_roots]

    def contains(self, p: PointSpec) -> bool:
        if p.is_infinite:
            return True
        if p.kind == "branch":
            return self.f(p.x) == 0
        return p.y != 0 and p.y * p.y == self.f(p.x)

    def to_json(self) -> dict:
        return {"f": self.f.to_json()}

    # -- sections ---------------------------------------------------------

    def section(self, k: int, r0=0, r1=0) -> "Section":
        return Section(self, k, _rf(r0), _rf(r1))

    def function(self, r0=0, r1=0) -> "Section":
        return self.section(0, r0, r1)

    def x(self) -> "Section":
        return self.function(RationalFunction.x())

    def y(self) -> "Section":
        return self.function(0, 1)

    # -- local frames -----------------------------------------------------

    def frame(self, p: PointSpec, scale=1) -> "LocalFrame":
        key = ("frame", p, as_rational(scale))
        if key not in self._cache:
            if not self.contains(p):
                raise ValueError(f"{p} is not on {self}")
            self._cache[key] = LocalFrame(self, p, as_rational(scale))
        return self._cache[key]


class LocalFrame:
    """Local parameter at a point together with the expansions of x and y."""

    def __init__(self, curve: Curve, point: PointSpec, scale: Fraction):
        if scale == 0:
            raise ValueError("zero scale")
        self.curve = curve
        self.point = point
        self.scale = scale
        f = curve.f
        if point.is_infinite:
            self.param = "s"
            self.X = LaurentSeries.monomial(-1, 1 / scale)
            # s^6 f(1/(scale s)) / scale^-6 ... leading coefficient scale^-6
            g = Polynomial([c * scale ** (6 - i) for i, c in enumerate(f.coeffs)]).reversed_coeffs(6)
            self._y_sign = 1 if point.kind == "inf+" else -1
            self._y_val = -3
            self._y_const = self._y_sign / scale ** 3
            self._y_radicand = g
        elif point.kind == "branch":
            self.param = "t"
            e = point.x
            fp = f.derive()(e)
            c = fp * scale * scale
            m = fp * scale
            self.X = LaurentSeries.exact([e, 0, c])
            sh = f.shift(e)  # f(e + u), zero constant term
            g = Polynomial([sh[i + 1] * c ** (i + 1) / (m * m) for i in range(6)])
            # g(t^2): radicand in t
            g2 = [Fraction(0)] * 13
            for i, a in enumerate(g.coeffs):
                g2[2 * i] = a
            self._y_val = 1
            self._y_const = m
            self._y_radicand = Polynomial(g2)
        else:
            self.param = "s"
            x0, y0 = point.x, point.y
            self.X = LaurentSeries.exact([x0, scale])
            sh = f.shift(x0)
            g = Polynomial([sh[i] * scale ** i / (y0 * y0) for i in range(7)])
            self._y_val = 0
            self._y_const = y0
            self._y_radicand = g
        self.dX = self.X.derive()
        self._y_cache: dict = {}

    def Y(self, rel_precision: int) -> LaurentSeries:
        """Expansion of y with ``rel_precision`` known terms."""
        if rel_precision not in self._y_cache:
            rad = LaurentSeries.exact(self._y_radicand.coeffs)
            u = rad.sqrt(rel_precision)
            self._y_cache[rel_precision] = (u * self._y_const).shift(self._y_val)
        return self._y_cache[rel_precision]

    def rf(self, r: RationalFunction, rel_precision: int) -> LaurentSeries:
        num = r.num(self.X)
        if r.den.degree <= 0:
            return num * (1 / r.den.lc)
        den = r.den(self.X)
        return num * den.inverse(rel_precision)

    def schwarzian_of_chart(self, rel_precision: int) -> LaurentSeries:
        """S(x(t)) for the coordinate change t -> x."""
        d1 = self.dX
        d2 = d1.derive()
        d3 = d2.derive()
        inv = d1.inverse(rel_precision) if not (d1.is_exact() and len(d1.coeffs) == 1) else d1.inverse()
        r = d2 * inv
        return d3 * inv - r * r * Fraction(3, 2)


# ---------------------------------------------------------------------------


class Section:
    """The weighted section (r0(x) + r1(x) y) (dx/y)^k on a curve."""

    __slots__ = ("curve", "k", "r0", "r1")

    def __init__(self, curve: Curve, k: int, r0: RationalFunction, r1: RationalFunction):
        self.curve = curve
        self.k = int(k)
        self.r0 = _rf(r0)
        self.r1 = _rf(r1)

    def __repr__(self):
        return f"Section(k={self.k}, r0={self.r0!r}, r1={self.r1!r})"

    def __eq__(self, other):
        if isinstance(other, Section):
            return (self.curve == other.curve and self.k == other.k
                    and self.r0 == other.r0 and self.r1 == other.r1)
        return NotImplemented

    def __hash__(self):
        return hash((self.k, self.r0, self.r1))

    def is_zero(self) -> bool:
        return self.r0.is_zero() and self.r1.is_zero()

    def is_polynomial(self) -> bool:
        return self.r0.is_polynomial() and self.r1.is_polynomial()

    def _same(self, other):
        if other.curve != self.curve:
            raise ValueError("sections live on different curves")

    def __add__(self, other):
        if isinstance(other, Section):
            self._same(other)
            if other.k != self.k:
                raise WrongWeight(f"cannot add weights {self.k} and {other.k}")
            return Section(self.curve, self.k, self.r0 + other.r0, self.r1 + other.r1)
        if self.k == 0 and isinstance(other, (int, Fraction, Polynomial, RationalFunction)):
            return Section(self.curve, 0, self.r0 + other, self.r1)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return Section(self.curve, self.k, -self.r0, -self.r1)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Section):
            self._same(other)
            f = self.curve._f_rf
            a0, a1, b0, b1 = self.r0, self.r1, other.r0, other.r1
            r0 = a0 * b0
            if not a1.is_zero() and not b1.is_zero():
                r0 = r0 + a1 * b1 * f
            r1 = a0 * b1 + a1 * b0
            return Section(self.curve, self.k + other.k, r0, r1)
        if isinstance(other, (int, Fraction, Polynomial, RationalFunction)):
            return Section(self.curve, self.k, self.r0 * other, self.r1 * other)
        return NotImplemented

    __rmul__ = __mul__

    def conjugate(self) -> "Section":
        """Image under the hyperelliptic involution y -> -y (function part only)."""
        return Section(self.curve, self.k, self.r0, -self.r1)

    def inverse(self) -> "Section":
        norm = self.r0 * self.r0 - self.r1 * self.r1 * self.curve._f_rf
        return Section(self.curve, -self.k, self.r0 / norm, -self.r1 / norm)

    def __truediv__(self, other):
        if isinstance(other, Section):
            return self * other.inverse()
        if isinstance(other, (int, Fraction)):
            return self * (1 / as_rational(other))
        if isinstance(other, (Polynomial, RationalFunction)):
            return self * _rf(other).inverse()
        return NotImplemented

    def with_weight(self, k: int) -> "Section":
        return Section(self.curve, k, self.r0, self.r1)

    def function_part(self) -> "Section":
        return self.with_weight(0)

    # dx^k coefficient: section = c * dx^k with c = g * y^(-k)
    def dx_coefficient(self) -> "Section":
        """The function c with ``self = c dx^k`` (for k = -1: the d/dx coefficient)."""
        g = self.function_part()
        k = self.k
        if k == 0:
            return g
        y = self.curve.y()
        yk = y
        for _ in range(abs(k) - 1):
            yk = yk * y
        return g * yk if k < 0 else g / yk

    @classmethod
    def from_dx_coefficient(cls, c: "Section", k: int) -> "Section":
        """The section c dx^k."""
        y = c.curve.y()
        if k == 0:
            return c.with_weight(0)
        yk = y
        for _ in range(abs(k) - 1):
            yk = yk * y
        g = c.function_part() * yk if k > 0 else c.function_part() / yk
        return g.with_weight(k)

    def derive(self) -> "Section":
        if self.k != 0:
            raise WrongWeight("derive_ff acts on functions (weight 0)")
        return derive_ff(self)

    def contract(self, other: "Section") -> "Section":
        return self * other

    def to_json(self) -> dict:
        return {"k": self.k, "r0": self.r0.to_json(), "r1": self.r1.to_json()}

    @classmethod
    def from_json(cls, curve: Curve, data: dict) -> "Section":
        return cls(curve, int(data["k"]), RationalFunction.from_json(data["r0"]),
                   RationalFunction.from_json(data["r1"]))


def derive_ff(g: Section) -> Section:
    """d/dx on the function field: D(x) = 1, D(y) = f' y / (2 f)."""
    if g.k != 0:
        raise WrongWeight("derive_ff acts on functions (weight 0)")
    c = g.curve
    r1 = g.r1.derive()
    if not g.r1.is_zero():
        r1 = r1 + g.r1 * c._df_over_2f
    return Section(c, 0, g.r0.derive(), r1)


# ---------------------------------------------------------------------------
# expansions


def _expand_function(sec: Section, frame: LocalFrame, rel: int) -> LaurentSeries:
    out = frame.rf(sec.r0, rel) if not sec.r0.is_zero() else LaurentSeries.constant(0)
    if not sec.r1.is_zero():
        out = out + frame.rf(sec.r1, rel) * frame.Y(rel)
    return out


def _weight_factor(frame: LocalFrame, k: int, rel: int) -> LaurentSeries:
    if k == 0:
        return LaurentSeries.constant(1)
    w = frame.dX * frame.Y(rel).inverse()
    return w ** k


def expand_at(sec: Section, p: PointSpec, order: int, scale=1) -> LaurentSeries:
    """Expansion of the full weighted section in the local parameter at p.

    The result is the coefficient series of ``(d param)^k`` and is known at
    least for all exponents below ``order``.
    """
    frame = sec.curve.frame(p, scale)
    if sec.is_zero():
        return LaurentSeries(order, [], order)
    rel = max(8, order + 8)
    for _ in range(12):
        s = _expand_function(sec, frame, rel) * _weight_factor(frame, sec.k, rel)
        if s.precision >= order:
            return s.with_precision(order) if s.precision != INF else s
        rel += max(8, order - int(s.precision) + 8) if s.precision != INF else 8
    raise InsufficientPrecision(f"could not reach order {order} at {p}")


def valuation_at(sec: Section, p: PointSpec, bound: int = 64) -> int:
    """Order of vanishing (negative for poles) of a nonzero section at p."""
    if sec.is_zero():
        raise ValueError("valuation of the zero section")
    order = 0
    while order <= bound:
        s = expand_at(sec, p, order)
        if not s.is_zero():
            return s.valuation
        order += 8
    raise InsufficientPrecision("valuation exceeds search bound")


def residue_at(sec: Section, p: PointSpec, scale=1) -> Fraction:
    """Residue at p of a one-form; independent of the local parameter."""
    if sec.k != 1:
        raise WrongWeight(f"residue_at needs weight 1, got {sec.k}")
    return expand_at(sec, p, 0, scale).residue()


def pole_points(sec: Section) -> list:
    """Points where a section can have poles: infinity plus zeros of denominators."""
    c = sec.curve
    pts = [INF_PLUS, INF_MINUS]
    den = sec.r0.den * sec.r1.den
    for r in sorted(set(_rational_roots(den))):
        if c.f(r) == 0:
            pts.append(PointSpec.branch(r))
        else:
            y0 = rational_sqrt(c.f(r))
            pts.extend([PointSpec.affine(r, y0), PointSpec.affine(r, -y0)])
    return pts


# ---------------------------------------------------------------------------
# pole-bounded section spaces

WINDOW_MARGIN = 6


def _denominator_for(curve: Curve, bounds: Mapping[PointSpec, int]) -> Polynomial:
    D = Polynomial.constant(1)
    fibers: dict = {}
    for p, b in bounds.items():
        if p.is_infinite or b <= 0:
            continue
        n = (b + 1) // 2 if p.kind == "branch" else b
        fibers[p.x] = max(fibers.get(p.x, 0), n)
    for x0, n in sorted(fibers.items()):
        D = D * Polynomial([-x0, 1]) ** n
    return D


def section_space(curve: Curve, k: int, pole_bounds: Mapping[PointSpec, int] | None = None) -> list:
    """Exact basis of weight-k sections with pole orders bounded as given.

    Unlisted points get bound 0.  The ansatz is ``(p0 + p1 y)/D (dx/y)^k`` with
    ``D`` a product of linear factors at the listed finite points, and
    ``deg p0 <= B + k + deg D + WINDOW_MARGIN`` with ``B`` the larger bound at
    infinity (``deg p1`` three less).
    """
    bounds = {p: int(b) for p, b in (pole_bounds or {}).items()}
    for p in bounds:
        if not curve.contains(p):
            raise ValueError(f"{p} is not on the curve")
    D = _denominator_for(curve, bounds)
    Binf = max(bounds.get(INF_PLUS, 0), bounds.get(INF_MINUS, 0))
    top = Binf + k + D.degree + WINDOW_MARGIN
    monos = []
    Drf = RationalFunction(1, D)
    for i in range(top + 1):
        monos.append(Section(curve, k, RationalFunction(Polynomial.monomial(i)) * Drf, RationalFunction(0)))
    for i in range(top - 3 + 1):
        monos.append(Section(curve, k, RationalFunction(0), RationalFunction(Polynomial.monomial(i)) * Drf))
    if not monos:
        return []
    checks = [INF_PLUS, INF_MINUS]
    for x0 in sorted({p.x for p in bounds if not p.is_infinite and bounds[p] > 0}):
        fx = curve.f(x0)
        if fx == 0:
            checks.append(PointSpec.branch(x0))
        else:
            y0 = rational_sqrt(fx)
            checks.extend([PointSpec.affine(x0, y0), PointSpec.affine(x0, -y0)])
    rows = []
    for p in checks:
        b = bounds.get(p, 0)
        exps = [expand_at(m, p, -b) for m in monos]
        lo = min((s.valuation for s in exps if not s.is_zero()), default=-b)
        for n in range(lo, -b):
            rows.append([s.coefficient(n) for s in exps])
    if rows:
        ker = kernel_basis(RationalMatrix(rows, len(monos)))
    else:
        ker = [tuple(Fraction(int(i == j)) for j in range(len(monos))) for i in range(len(monos))]
    basis = []
    for vec in _echelon(ker):
        s = Section(curve, k, RationalFunction(0), RationalFunction(0))
        for c, m in zip(vec, monos):
            if c:
                s = s + m * c
        basis.append(s)
    return basis


def _echelon(vectors: list) -> list:
    if not vectors:
        return []
    red, piv = RationalMatrix(vectors).rref()
    return [red.rows[i] for i in range(len(piv))]
