"""Verification suites shared by the command line and the test-suite.

Every suite takes a ``ScenarioConfig`` and returns a list of ``Check``
records.  All randomness is drawn from generators seeded by
``(config.seed, suite name)`` so reruns are reproducible.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import charvar
from .cech import (
    A_POINT,
    CechModel,
    alpha1,
    descended_form,
    literal_pairing,
    pairing,
    pairing_matrix,
    swapped_pairing,
    theorem1_mechanics,
)
from .errors import ConfigError, ProjSympError, UnstableTruncation
from .exact import (
    Polynomial,
    RationalFunction,
    RationalMatrix,
    kernel_basis,
    rational_from_str,
    rational_to_str,
)
from .projconn import (
    H1_pair,
    H2_pair,
    Jet,
    Mobius,
    ProjectiveConnection,
    Sl2Element,
    alpha_jet,
    apply_delta,
    apply_delta_local,
    beta,
    build_connection,
    delta_jet,
    delta_kernel_p1,
    eta,
    eta2_inverse,
    jet_of,
    kappa,
    schwarzian,
    vector_field_bracket,
)
from .riemann import INF_MINUS, INF_PLUS, Curve, PointSpec, expand_at, pole_points, residue_at

SUITES = ("jets", "lemma1", "theorem1", "sequence", "pairing", "goldman")


@dataclass
class ScenarioConfig:
    f: list = field(default_factory=lambda: [rational_to_str(c) for c in Curve.default().f.coeffs])
    points: dict = field(default_factory=lambda: {"a": "inf+", "b": "inf-"})
    truncation: int = 10
    seed: int = 0
    trials: dict = field(default_factory=lambda: dict(DEFAULT_TRIALS))
    tolerances: dict = field(default_factory=lambda: dict(DEFAULT_TOLERANCES))
    genera: list = field(default_factory=lambda: [2, 3])
    suites: list = field(default_factory=lambda: list(SUITES))

    @classmethod
    def from_dict(cls, data: dict) -> "ScenarioConfig":
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        known = {"curve", "f", "points", "truncation", "seed", "trials", "tolerances", "genera",
                 "suites"}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        cfg = cls()
        curve = data.get("curve", {})
        if not isinstance(curve, dict):
            raise ConfigError("'curve' must be an object")
        if "f" in data:
            cfg.f = data["f"]
        if "f" in curve:
            cfg.f = curve["f"]
        cfg.points = curve.get("points", data.get("points", cfg.points))
        if "truncation" in data:
            cfg.truncation = data["truncation"]
        if "seed" in data:
            cfg.seed = data["seed"]
        for key in ("trials", "tolerances"):
            if key in data:
                if not isinstance(data[key], dict):
                    raise ConfigError(f"'{key}' must be an object")
                base = getattr(cfg, key)
                bad = set(data[key]) - set(base)
                if bad:
                    raise ConfigError(f"unknown {key}: {sorted(bad)}")
                base.update(data[key])
        if "genera" in data:
            cfg.genera = data["genera"]
        if "suites" in data:
            cfg.suites = data["suites"]
        cfg.validate()
        return cfg

    def validate(self):
        if not isinstance(self.f, list) or len(self.f) != 7:
            raise ConfigError("f must list 7 coefficients (constant term first)")
        try:
            Curve(Polynomial([rational_from_str(str(c)) for c in self.f]))
        except (ValueError, ArithmeticError, ProjSympError) as exc:
            raise ConfigError(f"invalid curve: {exc}") from exc
        if self.points != {"a": "inf+", "b": "inf-"}:
            raise ConfigError("only the marked points a = inf+, b = inf- are supported")
        if not isinstance(self.truncation, int) or isinstance(self.truncation, bool) \
                or self.truncation < 4:
            raise ConfigError("truncation must be an integer >= 4")
        if not isinstance(self.seed, int) or isinstance(self.seed, bool):
            raise ConfigError("seed must be an integer")
        for k, v in self.trials.items():
            if not isinstance(v, int) or v < 0:
                raise ConfigError(f"trials.{k} must be a non-negative integer")
        for k, v in self.tolerances.items():
            if not isinstance(v, (int, float)) or v <= 0:
                raise ConfigError(f"tolerances.{k} must be positive")
        if not self.genera or any(not isinstance(g, int) or g < 2 for g in self.genera):
            raise ConfigError("genera must be integers >= 2")
        bad = [s for s in self.suites if s not in SUITES]
        if bad:
            raise ConfigError(f"unknown suites: {bad}")

    def curve(self) -> Curve:
        return Curve(Polynomial([rational_from_str(str(c)) for c in self.f]))

    def to_json(self) -> dict:
        return {"curve": {"f": [str(c) for c in self.f], "points": self.points},
                "truncation": self.truncation, "seed": self.seed, "trials": self.trials,
                "tolerances": self.tolerances, "genera": self.genera, "suites": self.suites}


DEFAULT_TRIALS = {
    "mobius": 100,
    "schwarzian": 30,
    "jets": 100,
    "lemma1_flat": 500,
    "lemma1_curve": 100,
    "theorem1": 200,
    "mechanics": 20,
    "residue_forms": 50,
    "shifts": 3,
    "classes": 10,
    "goldman_seeds": 20,
}

DEFAULT_TOLERANCES = {
    "relator": charvar.RELATOR_TOL,
    "coboundary": 1e-8,
    "antisymmetry": 1e-8,
    "conjugation": 1e-8,
    "bilinearity": 1e-12,
    "det_margin_root": 1e-2,
}


@dataclass
class Check:
    name: str
    status: str
    witness: dict = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return self.status != "fail"

    def to_json(self) -> dict:
        return {"name": self.name, "status": self.status, "witness": self.witness}


def _check(name, ok, **witness) -> Check:
    return Check(name, "pass" if ok else "fail", witness)


def _rng(cfg: ScenarioConfig, name: str) -> random.Random:
    return random.Random(f"{cfg.seed}:{name}")


def _q(x) -> str:
    return rational_to_str(x)


def _rand_poly(rng, deg, height=5) -> Polynomial:
    return Polynomial([rng.randint(-height, height) for _ in range(deg + 1)])


def _rand_mobius(rng) -> Mobius:
    while True:
        a, b, c, d = (Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(4))
        if a * d - b * c != 0:
            return Mobius(a, b, c, d)


def _fmt(x: float) -> float:
    return float(f"{x:.10g}")


def _cmatrix(M) -> list:
    return [[[_fmt(z.real), _fmt(z.imag)] for z in row] for row in np.asarray(M)]


# ---------------------------------------------------------------------------
# jets and the connection


def suite_jets(cfg: ScenarioConfig) -> list:
    rng = _rng(cfg, "jets")
    out = []
    p1 = ProjectiveConnection.projective_line()

    ker = delta_kernel_p1(12)
    span = RationalMatrix([[p[i] for i in range(13)] for p in ker], 13)
    expected = RationalMatrix([[int(i == j) for i in range(13)] for j in range(3)], 13)
    same = span.rank() == 3 and RationalMatrix(span.rows + expected.rows, 13).rank() == 3
    out.append(_check("delta_kernel", len(ker) == 3 and same, dimension=len(ker),
                      basis=[p.to_json() for p in ker]))

    bad = None
    for i in range(cfg.trials["mobius"]):
        phi = _rand_mobius(rng)
        h = _rand_poly(rng, rng.randint(0, 7))
        lhs = apply_delta(p1, phi.push_vector_field(h))
        rhs = phi.push_quadratic(apply_delta(p1, h))
        if lhs != rhs:
            bad = {"trial": i, "mobius": [_q(v) for v in (phi.a, phi.b, phi.c, phi.d)],
                   "field": h.to_json()}
            break
    inv = Mobius(0, 1, 1, 0)
    z3 = Polynomial.monomial(3)
    example = inv.push_quadratic(apply_delta(p1, z3))
    out.append(_check("mobius_equivariance", bad is None and example == RationalFunction(
        Polynomial.constant(6), Polynomial.monomial(4)), maps=cfg.trials["mobius"],
        inversion_example=example.to_json(), counterexample=bad))

    bad = None
    for i in range(cfg.trials["schwarzian"]):
        sigma = RationalFunction(_rand_poly(rng, 2), _rand_poly(rng, 1))
        if sigma.derive().is_zero():
            continue
        tau = _rand_mobius(rng).as_function()
        lhs = schwarzian(sigma(tau))
        dt = tau.derive()
        rhs = schwarzian(sigma)(tau) * dt * dt + schwarzian(tau)
        if lhs != rhs:
            bad = {"trial": i, "sigma": sigma.to_json(), "tau": tau.to_json()}
            break
    out.append(_check("schwarzian_cocycle", bad is None, pairs=cfg.trials["schwarzian"],
                      counterexample=bad))

    bad = None
    for i in range(cfg.trials["jets"]):
        z0 = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
        j2 = Jet(z0, tuple(Fraction(rng.randint(-9, 9)) for _ in range(3)))
        X = eta2_inverse(j2)
        if eta(X, z0, 2) != j2 or beta(eta(X, z0, 3)) != j2:
            bad = {"trial": i, "jet": [_q(v) for v in j2.values], "base": _q(z0)}
            break
        c = Fraction(rng.randint(-9, 9))
        if delta_jet(alpha_jet(c, z0)) != c or delta_jet(eta(X, z0, 3)) != 0:
            bad = {"trial": i, "alpha": _q(c)}
            break
    out.append(_check("jet_splitting", bad is None, jets=cfg.trials["jets"], counterexample=bad))

    gens = [Sl2Element(1, 0, 0), Sl2Element(0, 1, 0), Sl2Element(0, 0, 1)]
    lie_ok = all(X.bracket(Y).vector_field() == vector_field_bracket(Y.vector_field(),
                                                                     X.vector_field())
                 for X in gens for Y in gens)
    out.append(_check("lie_compatibility", lie_ok, convention="V([X,Y]) = [V(Y), V(X)]"))

    # symbol: the operator minus h''' only involves the 1-jet of h
    curve = cfg.curve()
    delta = build_connection(curve)
    q = delta.coefficient()
    sym_ok = True
    for _ in range(10):
        theta = curve.section(-1, _rand_poly(rng, 3), _rand_poly(rng, 2))
        H = theta.dx_coefficient()
        R = apply_delta(delta, theta).dx_coefficient()
        if R - H.derive().derive().derive() != q * H.derive() * 2 + q.derive() * H:
            sym_ok = False
    out.append(_check("symbol_is_one", sym_ok))

    pts = [INF_PLUS, INF_MINUS] + curve.branch_points()
    vals = {p.label(): delta.transformed(p, 2).valuation for p in pts}
    out.append(_check("connection_holomorphic", all(v >= 0 for v in vals.values()),
                      q=delta.q.to_json(), family_params=[_q(c) for c in delta.family_params],
                      valuations=vals))

    p = curve.branch_points()[0]
    theta = curve.section(-1, _rand_poly(rng, 2), _rand_poly(rng, 1))
    lhs = expand_at(apply_delta(delta, theta), p, 6)
    rhs = apply_delta_local(delta, theta, p, 6)
    agree = lhs.with_precision(6).agrees_with(rhs)
    out.append(_check("chart_consistency", agree, point=p.label(), order=6))
    return out


# ---------------------------------------------------------------------------
# Lemma 1


def suite_lemma1(cfg: ScenarioConfig) -> list:
    rng = _rng(cfg, "lemma1")
    k = kappa()
    out = [_check("kappa_calibration", k == -2, kappa=_q(k))]
    bad = None
    for i in range(cfg.trials["lemma1_flat"]):
        f = RationalFunction(_rand_poly(rng, rng.randint(0, 8)))
        g = RationalFunction(_rand_poly(rng, rng.randint(0, 8)))
        if H1_pair(f, g) != H2_pair(f, g):
            bad = {"trial": i, "f": f.to_json(), "g": g.to_json()}
            break
    out.append(_check("lemma1_flat", bad is None, pairs=cfg.trials["lemma1_flat"], kappa=_q(k),
                      counterexample=bad))
    curve = cfg.curve()
    delta = build_connection(curve)
    bad = None
    for i in range(cfg.trials["lemma1_curve"]):
        f = curve.function(_rand_poly(rng, 3), _rand_poly(rng, 2))
        g = curve.function(_rand_poly(rng, 3), _rand_poly(rng, 2))
        if H1_pair(f, g, delta) != H2_pair(f, g, delta):
            bad = {"trial": i, "f": f.to_json(), "g": g.to_json()}
            break
    out.append(_check("lemma1_curve", bad is None, pairs=cfg.trials["lemma1_curve"], kappa=_q(k),
                      q=delta.q.to_json(), counterexample=bad))
    return out


# ---------------------------------------------------------------------------
# residues and Theorem 1


def _random_one_form(curve: Curve, rng, finite_poles: bool = True):
    """Random one-form; poles at infinity only, or also at some branch points."""
    roots = curve.branch_roots
    den = Polynomial.constant(1)
    for e in (rng.sample(roots, rng.randint(1, 3)) if finite_poles else ()):
        den = den * Polynomial([-e, 1]) ** rng.randint(1, 3)
    r0 = RationalFunction(_rand_poly(rng, rng.randint(0, 6)), den)
    r1 = RationalFunction(_rand_poly(rng, rng.randint(0, 4)), den)
    return curve.section(1, r0, r1)


def residue_checks(cfg: ScenarioConfig) -> list:
    rng = _rng(cfg, "residues")
    curve = cfg.curve()
    bad, nonzero = None, 0
    for i in range(cfg.trials["residue_forms"]):
        w = _random_one_form(curve, rng, finite_poles=bool(i % 2))
        res = {p.label(): residue_at(w, p) for p in pole_points(w)}
        nonzero += any(v != 0 for v in res.values())
        if sum(res.values()) != 0:
            bad = {"trial": i, "form": w.to_json(), "residues": {k: _q(v) for k, v in res.items()}}
            break
    out = [_check("residue_theorem", bad is None, forms=cfg.trials["residue_forms"],
                  with_nonzero_residues=nonzero, counterexample=bad)]
    e = curve.branch_roots[0]
    p = PointSpec.branch(e)
    w = curve.section(1, 0, RationalFunction(Polynomial.constant(1), Polynomial([-e, 1])))
    vals = {str(s): residue_at(w, p, s) for s in (1, 2, Fraction(-1, 3))}
    out.append(_check("residue_parameter_independence", len(set(vals.values())) == 1
                      and vals["1"] != 0, point=p.label(),
                      residues={k: _q(v) for k, v in vals.items()}))
    return out


def _model(cfg: ScenarioConfig, N=None) -> CechModel:
    return CechModel(cfg.curve(), None, cfg.truncation if N is None else N)


def suite_theorem1(cfg: ScenarioConfig, model: CechModel | None = None) -> list:
    rng = _rng(cfg, "theorem1")
    model = model or _model(cfg)
    out = residue_checks(cfg)
    n = cfg.trials["theorem1"]
    for slot in ("first", "second"):
        bad = None
        for i in range(n):
            coeffs, cob = model.random_coboundary(rng)
            _, c = model.random_cocycle(rng)
            val = pairing(cob, c) if slot == "first" else pairing(c, cob)
            if val != 0:
                bad = {"trial": i, "value": _q(val), "N": model.N, "seed": cfg.seed,
                       "coboundary": {"theta_a": [_q(x) for x in coeffs[0]],
                                      "theta_b": [_q(x) for x in coeffs[1]]}}
                break
        out.append(_check(f"theorem1_{slot}_slot", bad is None, trials=n, counterexample=bad))
    bad = None
    for i in range(cfg.trials["mechanics"]):
        (ca, cb), _ = model.random_coboundary(rng)
        _, c = model.random_cocycle(rng)
        mech = theorem1_mechanics(model, model.coboundary(ca, cb), c)
        ok = (mech["res_theta_a_omega_a"] == 0 and mech["res_theta_b_omega_b"] == 0
              and mech["res_H1"] == 0 and mech["res_H2"] == 0 and mech["H1_equals_H2"])
        if not ok:
            bad = {"trial": i, **{k: str(v) for k, v in mech.items()}}
            break
    out.append(_check("theorem1_mechanics", bad is None, trials=cfg.trials["mechanics"],
                      counterexample=bad))
    # the "+" sign variant of the residue formula does not vanish on coboundaries
    witness = None
    for i in range(20):
        _, cob = model.random_coboundary(rng)
        _, c = model.random_cocycle(rng)
        v = literal_pairing(cob, c)
        if v != 0:
            witness = {"trial": i, "plus_sign_value": _q(v), "minus_sign_value": _q(pairing(cob, c))}
            break
    out.append(_check("plus_sign_variant_fails", witness is not None, witness=witness))
    return out


# ---------------------------------------------------------------------------
# exact sequence and the descended form


def _stability(cfg: ScenarioConfig, model: CechModel):
    bigger = _model(cfg, model.N + 2)
    d1, d2 = model.h1_basis().dim, bigger.h1_basis().dim
    if d1 != d2:
        raise UnstableTruncation(f"dimension {d1} at N={model.N} but {d2} at N={model.N + 2}",
                                 suggested=model.N + 4)
    return bigger


def suite_sequence(cfg: ScenarioConfig, model: CechModel | None = None) -> list:
    model = model or _model(cfg)
    out = []
    bigger = _stability(cfg, model)
    for m in (model, bigger):
        basis = m.h1_basis()
        h0k2 = len(m.global_quadratic)
        reps, _ = m.h1_tangent()
        h1t = len(reps)
        vertical = [alpha1(w, m.geometry) for w in m.global_quadratic]
        # alpha1 injective: vertical classes independent modulo coboundaries
        vcoords = RationalMatrix([list(basis.coordinates(c)) for c in vertical], basis.dim)
        a2 = RationalMatrix([list(m.alpha2(c)) for c in basis.representatives], h1t)
        a2_vertical = all(all(x == 0 for x in m.alpha2(c)) for c in vertical)
        # kernel of alpha2 (in class coordinates) equals the span of the vertical classes
        ker = RationalMatrix(a2.transpose().rows, basis.dim)
        kvecs = kernel_basis(ker)
        ker_eq_im = (len(kvecs) == vcoords.rank()
                     and RationalMatrix(list(kvecs) + list(vcoords.rows), basis.dim).rank() == len(kvecs))
        ok = (h0k2 == 3 and h1t == 3 and basis.dim == 6 and vcoords.rank() == 3
              and a2.rank() == 3 and a2_vertical and ker_eq_im)
        out.append(_check(f"exact_sequence_N{m.N}", ok, dim_H0_K2=h0k2, dim_H1_T=h1t,
                          dim_H1=basis.dim, rank_alpha1=vcoords.rank(), rank_alpha2=a2.rank(),
                          alpha2_of_vertical_zero=a2_vertical, ker_alpha2_eq_im_alpha1=ker_eq_im))
    out.append(_check("stabilization", model.h1_basis().dim == bigger.h1_basis().dim,
                      N=model.N, N_plus_2=bigger.N, dims=[model.h1_basis().dim,
                                                         bigger.h1_basis().dim]))
    return out


def cech_report(model: CechModel, M: RationalMatrix, stab: dict, trials: int) -> dict:
    basis = model.h1_basis()
    return {"dim_h1": basis.dim, "matrix": [[_q(x) for x in row] for row in M.rows],
            "ranks": {"matrix": M.rank(), "alpha1": len(basis.vertical_indices),
                      "alpha2": basis.dim - len(basis.vertical_indices)},
            "theorem1_trials": trials, "stabilization": stab}


def suite_pairing(cfg: ScenarioConfig, model: CechModel | None = None) -> list:
    rng = _rng(cfg, "pairing")
    model = model or _model(cfg)
    bigger = _stability(cfg, model)
    basis = model.h1_basis()
    M = descended_form(basis, model, seed=rng.randrange(2 ** 32), shifts=cfg.trials["shifts"])
    n = basis.dim
    antisym = all(M.rows[i][j] == -M.rows[j][i] for i in range(n) for j in range(n))
    vi = basis.vertical_indices
    isotropic = all(M.rows[i][j] == 0 for i in vi for j in vi)
    M2 = pairing_matrix(bigger.h1_basis())
    stab = {"N": model.N, "N+2": bigger.N, "equal": n == bigger.h1_basis().dim
            and M.rank() == M2.rank()}
    # class-level alternation on random combinations of the basis
    alt_ok = True
    reps = basis.representatives
    for _ in range(cfg.trials["classes"]):
        coeffs = [Fraction(rng.randint(-5, 5)) for _ in reps]
        c = reps[0] * coeffs[0]
        for a, r in zip(coeffs[1:], reps[1:]):
            c = c + r * a
        _, cob = model.random_coboundary(rng)
        if pairing(c + cob, c + cob) != 0:
            alt_ok = False
    swap = pairing_matrix(basis, swapped_pairing)
    out = [
        _check("descended_antisymmetric", antisym),
        _check("descended_rank", M.rank() == n == 6, rank=M.rank()),
        _check("vertical_isotropic", isotropic, vertical_indices=list(vi)),
        _check("well_defined_under_shifts", True, shifts=cfg.trials["shifts"]),
        _check("class_alternation", alt_ok, classes=cfg.trials["classes"]),
        _check("role_swap", swap == M),
        _check("pairing_stable", stab["equal"], N=model.N, N_plus_2=bigger.N,
               rank_N=M.rank(), rank_N_plus_2=M2.rank()),
    ]
    out[0].witness["report"] = cech_report(model, M, stab, cfg.trials["theorem1"])
    return out


# ---------------------------------------------------------------------------
# Goldman


def _goldman_one(rho: charvar.Representation, rng: np.random.Generator, tol: dict) -> dict:
    dims = charvar.cohomology_dimensions(rho)
    conv, gate = charvar.select_convention(rho, seed=int(rng.integers(2 ** 31)),
                                           tol=tol["coboundary"])
    Z = charvar.cocycle_space(rho)
    B = charvar.coboundary_space(rho)
    cob_in_Z = all(charvar.is_cocycle(rho, B[:, j]) for j in range(3))
    gm = charvar.GoldmanMatrix.compute(rho, conv)
    # both slots against coboundaries, relative to the term scale
    worst = 0.0
    for _ in range(3):
        u = Z @ (rng.normal(size=Z.shape[1]) + 1j * rng.normal(size=Z.shape[1]))
        b = charvar.coboundary(rho, rng.normal(size=3) + 1j * rng.normal(size=3))
        for p, q in ((u, b), (b, u)):
            worst = max(worst, abs(charvar.goldman_pairing(p, q, rho, conv))
                        / charvar.pairing_scale(p, q, rho, conv))
    # bilinearity
    u, v, w = (Z @ (rng.normal(size=Z.shape[1]) + 1j * rng.normal(size=Z.shape[1]))
               for _ in range(3))
    s = complex(rng.normal(), rng.normal())
    lhs = charvar.goldman_pairing(u + s * w, v, rho, conv)
    rhs = charvar.goldman_pairing(u, v, rho, conv) + s * charvar.goldman_pairing(w, v, rho, conv)
    bilin = abs(lhs - rhs) / (charvar.pairing_scale(u, v, rho, conv)
                              + abs(s) * charvar.pairing_scale(w, v, rho, conv))
    # conjugation invariance
    M = np.array([[complex(*rng.normal(size=2)) for _ in range(2)] for _ in range(2)])
    M = M / np.sqrt(np.linalg.det(M))
    rho2 = rho.conjugate(M)
    conj = abs(charvar.goldman_pairing(charvar.transport_cocycle(u, M),
                                       charvar.transport_cocycle(v, M), rho2, conv)
               - charvar.goldman_pairing(u, v, rho, conv)) / charvar.pairing_scale(u, v, rho, conv)
    dims2 = charvar.cohomology_dimensions(rho2)
    return {"dims": dims, "dims_conjugated": dims2, "convention": list(conv),
            "gate": {"/".join(map(str, k)): v for k, v in gate.items()},
            "coboundaries_in_Z": cob_in_Z, "coboundary_rel": worst, "bilinearity_rel": bilin,
            "conjugation_rel": conj, "antisymmetry_rel": gm.antisymmetry_error(),
            "det_margin": gm.det_margin(), "det_margin_root": gm.det_margin_root(), "rank": gm.rank(), "matrix": gm.matrix,
            "relator_error": rho.relator_error()}


def suite_goldman(cfg: ScenarioConfig) -> list:
    tol = cfg.tolerances
    out = []
    for g in cfg.genera:
        rows, failures, first = [], [], None
        for i in range(cfg.trials["goldman_seeds"]):
            seed = cfg.seed * 1000 + i
            rho = charvar.random_representation(g, seed)
            r = _goldman_one(rho, np.random.default_rng([cfg.seed, g, i]), tol)
            d = r["dims"]
            ok = (d["Z1"] == 6 * g - 3 and d["B1"] == 3 and d["H1"] == 6 * g - 6
                  and r["dims_conjugated"] == d and r["coboundaries_in_Z"]
                  and r["relator_error"] <= tol["relator"]
                  and r["coboundary_rel"] <= tol["coboundary"]
                  and r["antisymmetry_rel"] <= tol["antisymmetry"]
                  and r["bilinearity_rel"] <= tol["bilinearity"]
                  and r["conjugation_rel"] <= tol["conjugation"]
                  and r["det_margin_root"] > tol["det_margin_root"] and r["rank"] == 6 * g - 6)
            if first is None:
                first = r
            rows.append(r)
            if not ok:
                failures.append({"seed": seed, "genus": g, "representation": rho.to_json(),
                                 "dims": d, **{k: _fmt(r[k]) for k in (
                                     "coboundary_rel", "antisymmetry_rel", "bilinearity_rel",
                                     "conjugation_rel", "det_margin", "det_margin_root", "relator_error")}})
        worst = {k: _fmt(max(r[k] for r in rows)) for k in (
            "coboundary_rel", "antisymmetry_rel", "bilinearity_rel", "conjugation_rel",
            "relator_error")}
        report = {"dim_h1": first["dims"]["H1"], "matrix": _cmatrix(first["matrix"]),
                  "ranks": first["dims"], "convention": first["convention"],
                  "seeds": cfg.trials["goldman_seeds"], "worst": worst,
                  "min_det_margin": _fmt(min(r["det_margin"] for r in rows)),
                  "min_det_margin_root": _fmt(min(r["det_margin_root"] for r in rows)),
                  "plain_conventions_gate": {k: _fmt(v) for k, v in first["gate"].items()}}
        out.append(Check(f"goldman_genus{g}", "fail" if failures else "pass",
                         {"report": report, "failures": failures}))
    return out


RUNNERS = {
    "jets": suite_jets,
    "lemma1": suite_lemma1,
    "theorem1": suite_theorem1,
    "sequence": suite_sequence,
    "pairing": suite_pairing,
    "goldman": suite_goldman,
}


def run_suites(cfg: ScenarioConfig, names) -> list:
    """Run the named suites in order, sharing the Cech model between them."""
    model = None
    checks = []
    for name in names:
        t0 = time.perf_counter()
        if name in ("theorem1", "sequence", "pairing"):
            model = model or _model(cfg)
            res = RUNNERS[name](cfg, model)
        else:
            res = RUNNERS[name](cfg)
        dt = time.perf_counter() - t0
        for c in res:
            c.seconds = dt / len(res)
            c.witness.setdefault("suite", name)
        checks.extend(res)
    return checks
