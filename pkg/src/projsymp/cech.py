"""Two-chart Cech model of the deformation complex TX -> K^2.

The cover is ``U_a = X - {b}``, ``U_b = X - {a}`` with ``a = inf+`` and
``b = inf-``.  All sections that occur are polynomial in x and y, so every
space is a finite-dimensional Q-vector space once pole orders at the two
points at infinity are bounded by the truncation level ``N`` (``N + 6`` for
quadratic differentials).

Vectors in the "ambient" coordinates used below are the concatenated
coefficient lists of ``(p0, p1)`` for ``theta``, ``omega_a`` and ``omega_b``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import GeometryMismatch, NotGlobal, TheoremViolation, UnstableTruncation
from .exact import Polynomial, RationalFunction, RationalMatrix, kernel_basis
from .projconn import H1_pair, H2_pair, ProjectiveConnection, apply_delta, build_connection
from .riemann import INF_MINUS, INF_PLUS, Curve, Section, expand_at, residue_at, section_space

A_POINT = INF_PLUS
B_POINT = INF_MINUS

#: Sign in front of the second term of the residue pairing.  With
#: ``omega_a - omega_b = Delta(theta)`` only -1 makes the pairing vanish on
#: coboundaries; ``literal_pairing`` keeps the ``+`` variant for comparison.
PAIRING_SIGN = -1


@dataclass(frozen=True)
class Geometry:
    curve: Curve
    delta: ProjectiveConnection

    def check(self, other: "Geometry"):
        if self.curve != other.curve or self.delta != other.delta:
            raise GeometryMismatch("cocycles live on different (curve, connection) pairs")


@dataclass(frozen=True)
class CechCocycle:
    theta: Section
    omega_a: Section
    omega_b: Section
    geometry: Geometry

    def __add__(self, other: "CechCocycle") -> "CechCocycle":
        self.geometry.check(other.geometry)
        return CechCocycle(self.theta + other.theta, self.omega_a + other.omega_a,
                           self.omega_b + other.omega_b, self.geometry)

    def __neg__(self):
        return CechCocycle(-self.theta, -self.omega_a, -self.omega_b, self.geometry)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        return CechCocycle(self.theta * c, self.omega_a * c, self.omega_b * c, self.geometry)

    __rmul__ = __mul__

    def is_cocycle(self) -> bool:
        g = self.geometry
        if self.theta.k != -1 or self.omega_a.k != 2 or self.omega_b.k != 2:
            return False
        if not (self.theta.is_polynomial() and self.omega_a.is_polynomial()
                and self.omega_b.is_polynomial()):
            return False
        if not _holomorphic_at(self.omega_a, A_POINT) or not _holomorphic_at(self.omega_b, B_POINT):
            return False
        return self.omega_a - self.omega_b == apply_delta(g.delta, self.theta)

    def to_json(self) -> dict:
        return {"theta": self.theta.to_json(), "omega_a": self.omega_a.to_json(),
                "omega_b": self.omega_b.to_json()}


@dataclass(frozen=True)
class Coboundary:
    theta_a: Section
    theta_b: Section
    geometry: Geometry

    def cocycle(self) -> CechCocycle:
        d = self.geometry.delta
        return CechCocycle(self.theta_a - self.theta_b, apply_delta(d, self.theta_a),
                           apply_delta(d, self.theta_b), self.geometry)


def _holomorphic_at(sec: Section, p) -> bool:
    return sec.is_zero() or expand_at(sec, p, 0).is_zero()


def _residue_a(sec: Section) -> Fraction:
    return residue_at(sec, A_POINT)


def pairing(c1: CechCocycle, c2: CechCocycle) -> Fraction:
    """Res_a(theta1 . omega2_b - theta2 . omega1_a)."""
    c1.geometry.check(c2.geometry)
    form = c1.theta * c2.omega_b
    second = c2.theta * c1.omega_a
    form = form + second if PAIRING_SIGN > 0 else form - second
    return _residue_a(form)


def literal_pairing(c1: CechCocycle, c2: CechCocycle) -> Fraction:
    """Res_a(theta1 . omega2_b + theta2 . omega1_a), kept for comparison."""
    c1.geometry.check(c2.geometry)
    return _residue_a(c1.theta * c2.omega_b + c2.theta * c1.omega_a)


def swap_roles(c: CechCocycle) -> tuple:
    """The same class seen from the cover with a and b exchanged: (-theta, omega_b, omega_a)."""
    return (-c.theta, c.omega_b, c.omega_a)


def swapped_pairing(c1: CechCocycle, c2: CechCocycle) -> Fraction:
    """The pairing recomputed with the roles of a and b exchanged (residue at b)."""
    c1.geometry.check(c2.geometry)
    t1, _, wb1 = swap_roles(c1)
    t2, wa2, _ = swap_roles(c2)
    # in swapped coordinates "omega_b" of c2 is c2.omega_a and "omega_a" of c1 is c1.omega_b
    form = t1 * wa2
    second = t2 * wb1
    form = form + second if PAIRING_SIGN > 0 else form - second
    return residue_at(form, B_POINT)


def alpha1(omega: Section, geometry: Geometry) -> CechCocycle:
    """A global quadratic differential as the cocycle (0, omega, omega)."""
    if omega.k != 2:
        raise NotGlobal("alpha1 needs a quadratic differential")
    if not omega.is_polynomial() or not (_holomorphic_at(omega, A_POINT) and _holomorphic_at(omega, B_POINT)):
        raise NotGlobal("quadratic differential has poles")
    zero = Section(geometry.curve, -1, RationalFunction(0), RationalFunction(0))
    return CechCocycle(zero, omega, omega, geometry)


# ---------------------------------------------------------------------------
# coordinates


class _Slot:
    """Coefficient coordinates (p0 | p1) for polynomial sections of one weight."""

    def __init__(self, k: int, len0: int, len1: int):
        self.k, self.len0, self.len1 = k, len0, len1

    @property
    def size(self):
        return self.len0 + self.len1

    def vec(self, s: Section) -> list:
        p0, p1 = s.r0.num, s.r1.num
        if not s.is_polynomial():
            raise ValueError("non-polynomial section in the Cech model")
        d0, d1 = s.r0.den.lc, s.r1.den.lc
        if p0.degree >= self.len0 or p1.degree >= self.len1:
            raise ValueError("section outside the truncation window")
        return [p0[i] / d0 for i in range(self.len0)] + [p1[i] / d1 for i in range(self.len1)]

    def section(self, curve: Curve, v: Sequence) -> Section:
        return Section(curve, self.k, RationalFunction(Polynomial(v[: self.len0])),
                       RationalFunction(Polynomial(v[self.len0:self.size])))


def _window(sections: Sequence[Section]):
    l0 = max([s.r0.num.degree + 1 for s in sections] + [1])
    l1 = max([s.r1.num.degree + 1 for s in sections] + [1])
    return l0, l1


def _combine(basis: Sequence[Section], coeffs: Sequence, k: int, curve: Curve) -> Section:
    out = Section(curve, k, RationalFunction(0), RationalFunction(0))
    for c, b in zip(coeffs, basis):
        if c:
            out = out + b * c
    return out


def _reduce_mod(vectors: list, sub_rref: RationalMatrix, pivots: list) -> list:
    out = []
    for v in vectors:
        v = list(v)
        for i, pc in enumerate(pivots):
            c = v[pc]
            if c:
                row = sub_rref.rows[i]
                v = [a - c * b for a, b in zip(v, row)]
        out.append(v)
    return out


def _quotient_basis(total: list, sub: list, ncols: int):
    """Canonical representatives of span(total)/span(sub)."""
    if sub:
        sub_red, sub_piv = RationalMatrix(sub, ncols).rref()
        sub_rows = [sub_red.rows[i] for i in range(len(sub_piv))]
        red = _reduce_mod(total, sub_red, sub_piv)
    else:
        sub_rows, sub_piv = [], []
        red = [list(v) for v in total]
    if not red:
        return [], sub_rows
    q_red, q_piv = RationalMatrix(red, ncols).rref()
    reps = [q_red.rows[i] for i in range(len(q_piv))]
    return reps, sub_rows


def _coordinates(v: Sequence, reps: list, sub_rows: list, ncols: int):
    """Coefficients of v on reps, modulo span(sub_rows); None if v not in the span."""
    cols = reps + sub_rows
    if not cols:
        return () if all(a == 0 for a in v) else None
    m = RationalMatrix(list(zip(*cols)), len(cols))
    sol = m.solve(v)
    if sol is None:
        return None
    return tuple(sol[: len(reps)])


@dataclass
class H1Basis:
    geometry: Geometry
    N: int
    representatives: list
    coboundary_vectors: list = field(repr=False)
    ambient: tuple = field(repr=False)
    vertical_indices: tuple = ()

    @property
    def dim(self) -> int:
        return len(self.representatives)

    def coordinates(self, c: CechCocycle) -> tuple:
        """Coordinates of the class of c on the representatives."""
        v = self.ambient_vector(c)
        sol = _coordinates(v, [self.ambient_vector(r) for r in self.representatives],
                           self.coboundary_vectors, len(v))
        if sol is None:
            raise ValueError("cocycle outside the truncated cocycle space")
        return sol

    def ambient_vector(self, c: CechCocycle) -> list:
        st, sa, sb = self.ambient
        return st.vec(c.theta) + sa.vec(c.omega_a) + sb.vec(c.omega_b)


class CechModel:
    """All truncated spaces for one (curve, connection, N)."""

    def __init__(self, curve: Curve, delta: ProjectiveConnection | None = None, N: int = 10):
        if N < 4:
            raise ValueError("truncation level N must be at least 4")
        self.curve = curve
        self.delta = delta if delta is not None else build_connection(curve)
        self.N = N
        self.geometry = Geometry(curve, self.delta)
        a, b = A_POINT, B_POINT
        self.theta_basis = section_space(curve, -1, {a: N, b: N})
        self.theta_a_basis = section_space(curve, -1, {b: N})
        self.theta_b_basis = section_space(curve, -1, {a: N})
        self.omega_a_basis = section_space(curve, 2, {b: N + 6})
        self.omega_b_basis = section_space(curve, 2, {a: N + 6})
        self.global_quadratic = section_space(curve, 2)
        self.delta_theta = [apply_delta(self.delta, t) for t in self.theta_basis]
        self._delta_cache = {}
        st = _Slot(-1, *_window(self.theta_basis))
        w0, w1 = _window(self.omega_a_basis + self.omega_b_basis + self.delta_theta)
        sw = _Slot(2, w0, w1)
        self.slots = (st, sw, sw)
        self.ncols = st.size + 2 * sw.size
        self._cocycles = None
        self._basis = None

    # -- elementary constructions -----------------------------------------

    def _delta_of(self, basis_name: str, i: int) -> Section:
        key = (basis_name, i)
        if key not in self._delta_cache:
            self._delta_cache[key] = apply_delta(self.delta, getattr(self, basis_name)[i])
        return self._delta_cache[key]

    def zero_field(self) -> Section:
        return Section(self.curve, -1, RationalFunction(0), RationalFunction(0))

    def coboundary(self, ca: Sequence, cb: Sequence) -> Coboundary:
        ta = _combine(self.theta_a_basis, ca, -1, self.curve)
        tb = _combine(self.theta_b_basis, cb, -1, self.curve)
        return Coboundary(ta, tb, self.geometry)

    def coboundary_cocycle(self, ca: Sequence, cb: Sequence) -> CechCocycle:
        cob = self.coboundary(ca, cb)
        oa = _combine([self._delta_of("theta_a_basis", i) for i in range(len(ca))], ca, 2, self.curve)
        ob = _combine([self._delta_of("theta_b_basis", i) for i in range(len(cb))], cb, 2, self.curve)
        return CechCocycle(cob.theta_a - cob.theta_b, oa, ob, self.geometry)

    def ambient_vector(self, c: CechCocycle) -> list:
        st, sa, sb = self.slots
        return st.vec(c.theta) + sa.vec(c.omega_a) + sb.vec(c.omega_b)

    def cocycle_from_vector(self, v: Sequence) -> CechCocycle:
        st, sa, sb = self.slots
        i, j = st.size, st.size + sa.size
        return CechCocycle(st.section(self.curve, v[:i]), sa.section(self.curve, v[i:j]),
                           sb.section(self.curve, v[j:]), self.geometry)

    # -- cocycle space ------------------------------------------------------

    def cocycle_space(self) -> list:
        """Ambient vectors spanning the truncated cocycle space."""
        if self._cocycles is not None:
            return self._cocycles
        st, sw, _ = self.slots
        cols = []
        for t, dt in zip(self.theta_basis, self.delta_theta):
            cols.append([-a for a in sw.vec(dt)])
        for s in self.omega_a_basis:
            cols.append(sw.vec(s))
        for s in self.omega_b_basis:
            cols.append([-a for a in sw.vec(s)])
        m = RationalMatrix(list(zip(*cols)), len(cols))
        ker = kernel_basis(m)
        nt, na = len(self.theta_basis), len(self.omega_a_basis)
        out = []
        for v in ker:
            th = _combine(self.theta_basis, v[:nt], -1, self.curve)
            oa = _combine(self.omega_a_basis, v[nt:nt + na], 2, self.curve)
            ob = _combine(self.omega_b_basis, v[nt + na:], 2, self.curve)
            out.append(self.ambient_vector(CechCocycle(th, oa, ob, self.geometry)))
        self._cocycles = out
        return out

    def coboundary_space(self) -> list:
        na, nb = len(self.theta_a_basis), len(self.theta_b_basis)
        out = []
        for i in range(na):
            out.append(self.ambient_vector(self.coboundary_cocycle([int(j == i) for j in range(na)], [])))
        for i in range(nb):
            out.append(self.ambient_vector(self.coboundary_cocycle([], [int(j == i) for j in range(nb)])))
        return out

    def h1_basis(self) -> H1Basis:
        if self._basis is not None:
            return self._basis
        Z = self.cocycle_space()
        B = self.coboundary_space()
        # vertical classes first so that they occupy the leading slots
        vert = [self.ambient_vector(alpha1(w, self.geometry)) for w in self.global_quadratic]
        reps, sub_rows = _quotient_basis(vert + Z, B, self.ncols)
        # canonical reps from rref mix vertical and horizontal; rebuild with a
        # deterministic vertical-first choice
        vert_red = _quotient_basis(vert, B, self.ncols)[0]
        chosen = list(vert_red)
        for r in reps:
            if RationalMatrix(chosen + [r] + sub_rows, self.ncols).rank() > len(chosen) + len(sub_rows):
                chosen.append(r)
        cocycles = [self.cocycle_from_vector(v) for v in chosen]
        self._basis = H1Basis(self.geometry, self.N, cocycles, sub_rows, self.slots,
                              tuple(range(len(vert_red))))
        return self._basis

    # -- H^1(TX) ----------------------------------------------------------

    def h1_tangent(self):
        """Representatives (theta vectors) of H^0(U,T)/(H^0(U_a,T) + H^0(U_b,T))."""
        st = self.slots[0]
        total = [st.vec(t) for t in self.theta_basis]
        sub = [st.vec(t) for t in self.theta_a_basis] + [st.vec(t) for t in self.theta_b_basis]
        reps, sub_rows = _quotient_basis(total, sub, st.size)
        return reps, sub_rows

    def alpha2(self, c: CechCocycle) -> tuple:
        reps, sub_rows = self.h1_tangent()
        v = self.slots[0].vec(c.theta)
        sol = _coordinates(v, reps, sub_rows, len(v))
        if sol is None:
            raise ValueError("theta outside the truncated space")
        return sol

    # -- random elements ----------------------------------------------------

    def random_coboundary(self, rng: random.Random, height: int = 5) -> tuple:
        ca = [Fraction(rng.randint(-height, height)) for _ in self.theta_a_basis]
        cb = [Fraction(rng.randint(-height, height)) for _ in self.theta_b_basis]
        return (ca, cb), self.coboundary_cocycle(ca, cb)

    def random_cocycle(self, rng: random.Random, height: int = 5) -> tuple:
        Z = self.cocycle_space()
        coeffs = [Fraction(rng.randint(-height, height)) for _ in Z]
        v = [sum((c * z[i] for c, z in zip(coeffs, Z) if c), Fraction(0)) for i in range(self.ncols)]
        return coeffs, self.cocycle_from_vector(v)


def compute_h1_basis(curve: Curve, delta: ProjectiveConnection | None = None, N: int = 10,
                     check_stability: bool = True) -> H1Basis:
    """Basis of the truncated hypercohomology; fails unless N and N+2 agree."""
    model = CechModel(curve, delta, N)
    basis = model.h1_basis()
    if check_stability:
        bigger = CechModel(curve, model.delta, N + 2).h1_basis()
        if bigger.dim != basis.dim:
            raise UnstableTruncation(
                f"dimension {basis.dim} at N={N} but {bigger.dim} at N={N + 2}", suggested=N + 4)
    return basis


def pairing_matrix(basis: H1Basis, pair=pairing) -> RationalMatrix:
    reps = basis.representatives
    return RationalMatrix([[pair(u, v) for v in reps] for u in reps])


def descended_form(basis: H1Basis, model: CechModel | None = None, seed: int = 0,
                   shifts: int = 3) -> RationalMatrix:
    """Matrix of the pairing on the basis, certified on coboundary-shifted representatives."""
    M = pairing_matrix(basis)
    if model is None:
        model = CechModel(basis.geometry.curve, basis.geometry.delta, basis.N)
    rng = random.Random(seed)
    reps = basis.representatives
    for _ in range(shifts):
        shifted = [r + model.random_coboundary(rng)[1] for r in reps]
        M2 = RationalMatrix([[pairing(u, v) for v in shifted] for u in shifted])
        if M2 != M:
            raise TheoremViolation("pairing changed under a coboundary shift")
    return M


def h1_sections(delta: ProjectiveConnection, t1: Section, t2: Section) -> Section:
    """H1 on two vector fields as a one-form: t1 Delta(t2) + t2 Delta(t1)."""
    return t1 * apply_delta(delta, t2) + t2 * apply_delta(delta, t1)


def theorem1_mechanics(model: CechModel, cob: Coboundary, c2: CechCocycle) -> dict:
    """Residues of the individual terms in the vanishing argument."""
    d = model.delta
    ta, tb = cob.theta_a, cob.theta_b
    h1 = h1_sections(d, ta, c2.theta)
    h2 = H2_pair(ta.dx_coefficient(), c2.theta.dx_coefficient(), d)
    return {
        "res_theta_a_omega_a": _residue_a(ta * c2.omega_a),
        "res_theta_b_omega_b": _residue_a(tb * c2.omega_b),
        "res_H1": _residue_a(h1),
        "res_H2": _residue_a(h2),
        "H1_equals_H2": h1 == h2,
    }
