"""Exact arithmetic over the rationals.

Rationals are :class:`fractions.Fraction`.  On top of that this module
provides dense univariate polynomials, reduced rational functions,
truncated Laurent series with explicit precision, and a small dense
matrix type with exact row reduction.

Every value is immutable once built.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence

from .errors import InsufficientPrecision, NotASquare

Rational = Fraction

#: ``Polynomial.degree`` of the zero polynomial.
ZERO_DEGREE = -1

INF = math.inf


def as_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, _RationalABC)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def rational_to_str(q) -> str:
    q = as_rational(q)
    return f"{q.numerator}/{q.denominator}"


def rational_from_str(text: str) -> Fraction:
    return Fraction(text.strip())


def rational_sqrt(q) -> Fraction:
    """Nonnegative square root of a rational square; NotASquare otherwise."""
    q = as_rational(q)
    if q < 0:
        raise NotASquare(f"{q} is negative")
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn != n or rd * rd != d:
        raise NotASquare(f"{q} is not a square in Q")
    return Fraction(rn, rd)


def _is_scalar(v) -> bool:
    return isinstance(v, (int, Fraction, _RationalABC)) and not isinstance(v, bool)


# ---------------------------------------------------------------------------
# polynomials


class Polynomial:
    """Dense polynomial with rational coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        c = [as_rational(a) for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def _raw(cls, coeffs: list) -> "Polynomial":
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        p = object.__new__(cls)
        p.coeffs = tuple(coeffs)
        return p

    @classmethod
    def x(cls) -> "Polynomial":
        return cls._raw([Fraction(0), Fraction(1)])

    @classmethod
    def constant(cls, c) -> "Polynomial":
        return cls._raw([as_rational(c)])

    @classmethod
    def monomial(cls, n: int, c=1) -> "Polynomial":
        return cls._raw([Fraction(0)] * n + [as_rational(c)])

    @classmethod
    def from_roots(cls, roots: Iterable) -> "Polynomial":
        p = cls.constant(1)
        for r in roots:
            p = p * cls._raw([-as_rational(r), Fraction(1)])
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def __eq__(self, other):
        if _is_scalar(other):
            other = Polynomial.constant(other)
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(("Polynomial", self.coeffs))

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "Polynomial(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            terms.append(f"{c}" if i == 0 else f"{c}*x^{i}")
        return "Polynomial(" + " + ".join(terms) + ")"

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            return other
        if _is_scalar(other):
            return Polynomial.constant(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Polynomial._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw([-c for c in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if _is_scalar(other):
            c = as_rational(other)
            return Polynomial._raw([a * c for a in self.coeffs])
        if not isinstance(other, Polynomial):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Polynomial._raw([])
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
        return Polynomial._raw(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Polynomial.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = o.degree
        inv = 1 / o.lc
        if len(rem) - 1 < db:
            return Polynomial._raw([]), Polynomial._raw(rem)
        quo = [Fraction(0)] * (len(rem) - db)
        bc = o.coeffs
        for k in range(len(rem) - 1 - db, -1, -1):
            c = rem[k + db] * inv
            quo[k] = c
            if c:
                for j in range(db + 1):
                    rem[k + j] -= c * bc[j]
        return Polynomial._raw(quo), Polynomial._raw(rem[:db] if db > 0 else [])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        return self * (1 / self.lc)

    def gcd(self, other: "Polynomial") -> "Polynomial":
        """Monic gcd; gcd(0, 0) is 0."""
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def derive(self) -> "Polynomial":
        return Polynomial._raw([i * c for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, value):
        """Horner evaluation at a rational, polynomial, rational function or series."""
        if not self.coeffs:
            return value * 0 if not _is_scalar(value) else Fraction(0)
        if _is_scalar(value):
            v = as_rational(value)
            acc = Fraction(0)
            for c in reversed(self.coeffs):
                acc = acc * v + c
            return acc
        acc = value * 0 + self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * value + c
        return acc

    def shift(self, a) -> "Polynomial":
        """The polynomial p(x + a)."""
        return self(Polynomial._raw([as_rational(a), Fraction(1)]))

    def reversed_coeffs(self, n: int) -> "Polynomial":
        """x^n p(1/x) for n >= degree."""
        if n < self.degree:
            raise ValueError("reversal length below degree")
        c = list(self.coeffs) + [Fraction(0)] * (n + 1 - len(self.coeffs))
        return Polynomial._raw(c[::-1])

    def to_json(self) -> list:
        return [rational_to_str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence) -> "Polynomial":
        return cls(rational_from_str(str(c)) for c in data)


# ---------------------------------------------------------------------------
# rational functions


class RationalFunction:
    """Quotient num/den of polynomials, kept reduced with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num=0, den=1):
        if not isinstance(num, Polynomial):
            num = Polynomial.constant(num)
        if not isinstance(den, Polynomial):
            den = Polynomial.constant(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            self.num, self.den = num, Polynomial.constant(1)
            return
        if den.degree > 0:
            g = num.gcd(den)
            if g.degree > 0:
                num, den = num // g, den // g
        lc = den.lc
        if lc != 1:
            num, den = num * (1 / lc), den * (1 / lc)
        self.num, self.den = num, den

    @classmethod
    def _raw(cls, num, den):
        r = object.__new__(cls)
        r.num, r.den = num, den
        return r

    @classmethod
    def x(cls) -> "RationalFunction":
        return cls._raw(Polynomial.x(), Polynomial.constant(1))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def __eq__(self, other):
        if _is_scalar(other) or isinstance(other, Polynomial):
            other = RationalFunction(other)
        if isinstance(other, RationalFunction):
            return self.num == other.num and self.den == other.den
        return NotImplemented

    def __hash__(self):
        return hash(("RationalFunction", self.num.coeffs, self.den.coeffs))

    def __repr__(self):
        if self.is_polynomial():
            return f"RationalFunction({self.num!r})"
        return f"RationalFunction({self.num!r} / {self.den!r})"

    @staticmethod
    def _coerce(other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, Polynomial):
            return RationalFunction._raw(other, Polynomial.constant(1))
        if _is_scalar(other):
            return RationalFunction._raw(Polynomial.constant(other), Polynomial.constant(1))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RationalFunction(self.num + o.num, self.den)
        g = self.den.gcd(o.den)
        if g.degree > 0:
            da, db = self.den // g, o.den // g
            return RationalFunction(self.num * db + o.num * da, da * o.den)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction._raw(-self.num, self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if _is_scalar(other):
            return RationalFunction._raw(self.num * other, self.den) if other else RationalFunction(0)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.is_zero() or o.is_zero():
            return RationalFunction(0)
        # cross-cancel before multiplying to keep degrees small
        g1 = self.num.gcd(o.den) if o.den.degree > 0 else None
        g2 = o.num.gcd(self.den) if self.den.degree > 0 else None
        an, bd = self.num, o.den
        if g1 is not None and g1.degree > 0:
            an, bd = an // g1, bd // g1
        bn, ad = o.num, self.den
        if g2 is not None and g2.degree > 0:
            bn, ad = bn // g2, ad // g2
        num, den = an * bn, ad * bd
        lc = den.lc
        if lc != 1:
            num, den = num * (1 / lc), den * (1 / lc)
        return RationalFunction._raw(num, den)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other):
        if _is_scalar(other):
            return self * (1 / as_rational(other))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return RationalFunction._raw(self.num ** n, self.den ** n)

    def derive(self) -> "RationalFunction":
        n, d = self.num, self.den
        return RationalFunction(n.derive() * d - n * d.derive(), d * d)

    def __call__(self, value):
        """Evaluate at a rational, or compose with a polynomial / rational function / series."""
        if _is_scalar(value):
            d = self.den(value)
            if d == 0:
                raise ZeroDivisionError(f"pole at {value}")
            return self.num(value) / d
        if isinstance(value, Polynomial):
            value = RationalFunction._coerce(value)
        if isinstance(value, RationalFunction):
            return _compose_rf(self, value)
        return self.num(value) / self.den(value)

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "RationalFunction":
        return cls(Polynomial.from_json(data["num"]), Polynomial.from_json(data["den"]))


def _compose_rf(outer: RationalFunction, inner: RationalFunction) -> RationalFunction:
    # outer(inner) with homogenised Horner to avoid nested fractions
    p, q = inner.num, inner.den
    n = max(outer.num.degree, outer.den.degree, 0)

    def homog(poly: Polynomial) -> Polynomial:
        acc = Polynomial._raw([])
        for i, c in enumerate(poly.coeffs):
            if c:
                acc = acc + (p ** i) * (q ** (n - i)) * c
        return acc

    return RationalFunction(homog(outer.num), homog(outer.den))


# ---------------------------------------------------------------------------
# truncated Laurent series


class LaurentSeries:
    """Laurent series sum_{n >= valuation} c_n s^n known for exponents < precision.

    ``precision`` is ``math.inf`` for exact (finite) Laurent polynomials.
    A series that is zero to its precision has ``valuation == precision`` and
    no stored coefficients; the exact zero has valuation 0 and precision inf.
    """

    __slots__ = ("valuation", "coeffs", "precision")

    def __init__(self, valuation: int, coeffs: Iterable = (), precision=INF):
        c = [as_rational(a) for a in coeffs]
        self._set(valuation, c, precision)

    def _set(self, v, c, p):
        if p != INF:
            p = int(p)
            keep = max(0, p - v)
            c = c[:keep]
        i = 0
        while i < len(c) and c[i] == 0:
            i += 1
        v += i
        c = c[i:]
        while c and c[-1] == 0:
            c.pop()
        if not c:
            v = p if p != INF else 0
        self.valuation = v
        self.coeffs = tuple(c)
        self.precision = p

    @classmethod
    def _make(cls, v, c, p):
        s = object.__new__(cls)
        s._set(v, c, p)
        return s

    @classmethod
    def exact(cls, coeffs: Iterable, valuation: int = 0) -> "LaurentSeries":
        return cls(valuation, coeffs, INF)

    @classmethod
    def constant(cls, c, precision=INF) -> "LaurentSeries":
        return cls(0, [c], precision)

    @classmethod
    def monomial(cls, n: int, c=1) -> "LaurentSeries":
        return cls(n, [c], INF)

    @classmethod
    def from_polynomial(cls, p: Polynomial, precision=INF) -> "LaurentSeries":
        return cls(0, p.coeffs, precision)

    def is_exact(self) -> bool:
        return self.precision == INF

    def is_zero(self) -> bool:
        """True when zero to the known precision."""
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        return self.coeffs[0] if self.coeffs else Fraction(0)

    @property
    def top(self):
        """One past the highest stored exponent."""
        return self.valuation + len(self.coeffs)

    def __getitem__(self, n: int) -> Fraction:
        return self.coefficient(n)

    def coefficient(self, n: int) -> Fraction:
        if n >= self.precision:
            raise InsufficientPrecision(f"coefficient s^{n} beyond precision {self.precision}")
        i = n - self.valuation
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def with_precision(self, p) -> "LaurentSeries":
        return LaurentSeries._make(self.valuation, list(self.coeffs), min(p, self.precision))

    def shift(self, k: int) -> "LaurentSeries":
        """Multiply by s^k."""
        p = self.precision + k if self.precision != INF else INF
        return LaurentSeries._make(self.valuation + k, list(self.coeffs), p)

    def __eq__(self, other):
        if _is_scalar(other):
            other = LaurentSeries.constant(other)
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return (self.valuation, self.coeffs, self.precision) == (
            other.valuation, other.coeffs, other.precision)

    def __hash__(self):
        return hash((self.valuation, self.coeffs, self.precision))

    def agrees_with(self, other: "LaurentSeries") -> bool:
        """Equality of coefficients up to the smaller of the two precisions."""
        p = min(self.precision, other.precision)
        lo = min(self.valuation, other.valuation)
        hi = p if p != INF else max(self.top, other.top)
        return all(self.coefficient(n) == other.coefficient(n) for n in range(lo, int(hi)))

    def __repr__(self):
        terms = [f"{c}*s^{self.valuation + i}" for i, c in enumerate(self.coeffs) if c]
        body = " + ".join(terms) if terms else "0"
        tail = "" if self.is_exact() else f" + O(s^{self.precision})"
        return f"LaurentSeries({body}{tail})"

    @staticmethod
    def _coerce(other):
        if isinstance(other, LaurentSeries):
            return other
        if _is_scalar(other):
            return LaurentSeries.constant(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p = min(self.precision, o.precision)
        if self.is_zero() and self.is_exact():
            return o.with_precision(p)
        if o.is_zero() and o.is_exact():
            return self.with_precision(p)
        v = min(self.valuation, o.valuation)
        hi = max(self.top, o.top)
        if p != INF:
            hi = min(hi, p)
        n = max(0, hi - v)
        out = [Fraction(0)] * n
        for src in (self, o):
            off = src.valuation - v
            for i, c in enumerate(src.coeffs):
                if 0 <= off + i < n:
                    out[off + i] += c
        return LaurentSeries._make(v, out, p)

    __radd__ = __add__

    def __neg__(self):
        return LaurentSeries._make(self.valuation, [-c for c in self.coeffs], self.precision)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if _is_scalar(other):
            c = as_rational(other)
            if c == 0:
                return LaurentSeries._make(0, [], self.precision)
            return LaurentSeries._make(self.valuation, [a * c for a in self.coeffs], self.precision)
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        a, b = self, other
        # zero-to-precision operands still bound the product's precision
        pa = a.precision if not (a.is_zero() and a.is_exact()) else INF
        pb = b.precision if not (b.is_zero() and b.is_exact()) else INF
        p = min(a.valuation + pb, b.valuation + pa)
        if a.is_zero() or b.is_zero():
            if a.is_zero() and a.is_exact() or b.is_zero() and b.is_exact():
                return LaurentSeries._make(0, [], INF)
            return LaurentSeries._make(p, [], p)
        v = a.valuation + b.valuation
        n = len(a.coeffs) + len(b.coeffs) - 1
        if p != INF:
            n = min(n, p - v)
        out = [Fraction(0)] * max(n, 0)
        bc = b.coeffs
        for i, ai in enumerate(a.coeffs):
            if i >= n:
                break
            if ai == 0:
                continue
            lim = min(len(bc), n - i)
            for j in range(lim):
                out[i + j] += ai * bc[j]
        return LaurentSeries._make(v, out, p)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = LaurentSeries.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self, rel_precision: int | None = None) -> "LaurentSeries":
        """Multiplicative inverse.

        Exact inputs that are not monomials have infinite expansions; they need
        ``rel_precision`` (number of terms to produce).
        """
        if self.is_zero():
            raise InsufficientPrecision("inverse of a series that is zero to its precision")
        v = self.valuation
        c = self.coeffs
        if self.is_exact():
            if len(c) == 1:
                return LaurentSeries._make(-v, [1 / c[0]], INF)
            if rel_precision is None:
                raise InsufficientPrecision("inverse of an exact non-monomial needs rel_precision")
            n = rel_precision
        else:
            n = self.precision - v
            if rel_precision is not None:
                n = min(n, rel_precision)
        inv0 = 1 / c[0]
        out = [Fraction(0)] * n
        if n:
            out[0] = inv0
        for k in range(1, n):
            acc = Fraction(0)
            for i in range(1, min(k, len(c) - 1) + 1):
                acc += c[i] * out[k - i]
            out[k] = -acc * inv0
        return LaurentSeries._make(-v, out, -v + n)

    def __truediv__(self, other):
        if _is_scalar(other):
            return self * (1 / as_rational(other))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_exact() and len(o.coeffs) > 1:
            rel = self.precision - self.valuation if not self.is_exact() else None
            return self * o.inverse(rel)
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def derive(self) -> "LaurentSeries":
        v = self.valuation
        out = [(v + i) * c for i, c in enumerate(self.coeffs)]
        p = self.precision - 1 if self.precision != INF else INF
        return LaurentSeries._make(v - 1, out, p)

    def residue(self) -> Fraction:
        if self.precision <= -1:
            raise InsufficientPrecision(f"residue needs precision > -1, have {self.precision}")
        return self.coefficient(-1)

    def sqrt(self, rel_precision: int | None = None) -> "LaurentSeries":
        return series_sqrt(self, rel_precision)

    def to_json(self) -> dict:
        return {
            "valuation": self.valuation,
            "coefficients": [rational_to_str(c) for c in self.coeffs],
            "precision": None if self.is_exact() else self.precision,
        }

    @classmethod
    def from_json(cls, data: dict) -> "LaurentSeries":
        p = data.get("precision")
        return cls(int(data["valuation"]), [rational_from_str(str(c)) for c in data["coefficients"]],
                   INF if p is None else int(p))


def series_sqrt(s: LaurentSeries, rel_precision: int | None = None) -> LaurentSeries:
    """Square root with leading coefficient +sqrt(leading coefficient of s)."""
    if s.is_zero():
        raise NotASquare("square root of a series that vanishes to its precision")
    v = s.valuation
    if v % 2:
        raise NotASquare(f"odd valuation {v}")
    c = s.coeffs
    r0 = rational_sqrt(c[0])
    if r0 == 0:
        raise NotASquare("zero leading coefficient")
    if s.is_exact():
        if len(c) == 1:
            return LaurentSeries._make(v // 2, [r0], INF)
        if rel_precision is None:
            raise InsufficientPrecision("square root of an exact non-monomial needs rel_precision")
        n = rel_precision
    else:
        n = s.precision - v
        if rel_precision is not None:
            n = min(n, rel_precision)
    out = [Fraction(0)] * n
    if n:
        out[0] = r0
    inv = 1 / (2 * r0)
    for k in range(1, n):
        acc = c[k] if k < len(c) else Fraction(0)
        for i in range(1, k):
            acc -= out[i] * out[k - i]
        out[k] = acc * inv
    return LaurentSeries._make(v // 2, out, v // 2 + n)


def residue(f: LaurentSeries) -> Fraction:
    """Coefficient of s^-1 of the one-form f(s) ds."""
    return f.residue()


def derive(f):
    """Formal derivative of a polynomial, rational function or Laurent series."""
    return f.derive()


# ---------------------------------------------------------------------------
# exact linear algebra


class RationalMatrix:
    """Dense row-major matrix over Q."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        r = tuple(tuple(as_rational(a) for a in row) for row in rows)
        if ncols is None:
            ncols = len(r[0]) if r else 0
        if any(len(row) != ncols for row in r):
            raise ValueError("ragged matrix")
        self.rows = r
        self.nrows = len(r)
        self.ncols = ncols

    @classmethod
    def zeros(cls, n: int, m: int) -> "RationalMatrix":
        return cls([[0] * m for _ in range(n)], m)

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], n)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"RationalMatrix({[[str(a) for a in r] for r in self.rows]})"

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix([list(col) for col in zip(*self.rows)] if self.nrows else [],
                              self.nrows)

    T = property(transpose)

    def __add__(self, other: "RationalMatrix"):
        return RationalMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
                              self.ncols)

    def __neg__(self):
        return RationalMatrix([[-a for a in r] for r in self.rows], self.ncols)

    def __sub__(self, other: "RationalMatrix"):
        return self + (-other)

    def __matmul__(self, other):
        if isinstance(other, RationalMatrix):
            cols = list(zip(*other.rows))
            return RationalMatrix([[sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in cols]
                                   for r in self.rows], other.ncols)
        return self.apply(other)

    def apply(self, vec: Sequence) -> tuple:
        v = [as_rational(a) for a in vec]
        if len(v) != self.ncols:
            raise ValueError("dimension mismatch")
        return tuple(sum((a * b for a, b in zip(r, v) if a), Fraction(0)) for r in self.rows)

    def is_zero(self) -> bool:
        return all(a == 0 for r in self.rows for a in r)

    def rref(self):
        """Reduced row echelon form and pivot columns (leftmost pivots first)."""
        m = [list(r) for r in self.rows]
        pivots = []
        prow = 0
        for col in range(self.ncols):
            if prow == len(m):
                break
            sel = None
            for i in range(prow, len(m)):
                if m[i][col] != 0:
                    sel = i
                    break
            if sel is None:
                continue
            m[prow], m[sel] = m[sel], m[prow]
            piv = m[prow]
            inv = 1 / piv[col]
            if inv != 1:
                for j in range(col, self.ncols):
                    if piv[j]:
                        piv[j] *= inv
            nz = [j for j in range(col, self.ncols) if piv[j]]
            for i in range(len(m)):
                if i != prow:
                    f = m[i][col]
                    if f:
                        row = m[i]
                        for j in nz:
                            row[j] -= f * piv[j]
            pivots.append(col)
            prow += 1
        return RationalMatrix(m, self.ncols), pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel_basis(self) -> list:
        return kernel_basis(self)

    def solve(self, rhs: Sequence):
        """A particular solution x with self @ x = rhs, or None when inconsistent."""
        aug = RationalMatrix([list(r) + [as_rational(b)] for r, b in zip(self.rows, rhs)],
                             self.ncols + 1)
        red, piv = aug.rref()
        if piv and piv[-1] == self.ncols:
            return None
        x = [Fraction(0)] * self.ncols
        for i, c in enumerate(piv):
            x[c] = red.rows[i][self.ncols]
        return tuple(x)

    def det(self) -> Fraction:
        if self.nrows != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        m = [list(r) for r in self.rows]
        n = self.nrows
        d = Fraction(1)
        for c in range(n):
            sel = next((i for i in range(c, n) if m[i][c] != 0), None)
            if sel is None:
                return Fraction(0)
            if sel != c:
                m[c], m[sel] = m[sel], m[c]
                d = -d
            d *= m[c][c]
            inv = 1 / m[c][c]
            for i in range(c + 1, n):
                f = m[i][c] * inv
                if f:
                    for j in range(c, n):
                        m[i][j] -= f * m[c][j]
        return d

    def to_json(self) -> list:
        return [[rational_to_str(a) for a in r] for r in self.rows]

    @classmethod
    def from_json(cls, data: list) -> "RationalMatrix":
        return cls([[rational_from_str(str(a)) for a in r] for r in data])


def kernel_basis(m: RationalMatrix) -> list:
    """Exact basis of the right kernel, one vector per free column."""
    red, pivots = m.rref()
    pivset = set(pivots)
    basis = []
    for free in range(m.ncols):
        if free in pivset:
            continue
        v = [Fraction(0)] * m.ncols
        v[free] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -red.rows[i][free]
        basis.append(tuple(v))
    return basis


def rank(vectors: Sequence[Sequence], ncols: int | None = None) -> int:
    if not vectors:
        return 0
    return RationalMatrix(vectors, ncols).rank()
