"""Acceptance criteria, one test each.

Every test prints a single ``criterion N ...: PASS|FAIL`` line (visible with
``pytest -s`` or in the ``-v`` log) before asserting.  Tolerances and runtime
limits are fixed here and must not be relaxed.
"""

import json
import time
from fractions import Fraction

import pytest

from projsymp import cli
from projsymp.suites import (
    ScenarioConfig,
    _model,
    residue_checks,
    suite_goldman,
    suite_jets,
    suite_lemma1,
    suite_pairing,
    suite_sequence,
    suite_theorem1,
)

SEED = 0
COBOUNDARY_TOL = 1e-8
ANTISYMMETRY_TOL = 1e-8
DET_MARGIN_ROOT = 1e-2


def _report(capsys, n, title, ok, seconds, limit, detail=""):
    ok = ok and seconds < limit
    line = f"criterion {n} {title}: {'PASS' if ok else 'FAIL'} ({seconds:.1f} s < {limit} s){detail}"
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


def _by_name(checks):
    return {c.name: c for c in checks}


@pytest.fixture
def cfg():
    return ScenarioConfig.from_dict({"seed": SEED})


def test_criterion_1_jets(cfg, capsys):
    t = time.perf_counter()
    checks = _by_name(suite_jets(cfg))
    dt = time.perf_counter() - t
    k = checks["delta_kernel"]
    m = checks["mobius_equivariance"]
    ok = (k.passed and k.witness["dimension"] == 3
          and k.witness["basis"] == [["1/1"], ["0/1", "1/1"], ["0/1", "0/1", "1/1"]]
          and m.passed and m.witness["maps"] == 100)
    _report(capsys, 1, "jet suite", ok, dt, 10)


def test_criterion_2_lemma1(cfg, capsys):
    t = time.perf_counter()
    checks = _by_name(suite_lemma1(cfg))
    dt = time.perf_counter() - t
    flat, curve = checks["lemma1_flat"], checks["lemma1_curve"]
    ok = (checks["kappa_calibration"].passed and Fraction(flat.witness["kappa"]) == -2
          and flat.passed and flat.witness["pairs"] == 500
          and curve.passed and curve.witness["pairs"] == 100)
    _report(capsys, 2, "Lemma 1", ok, dt, 60, " kappa=-2")


def test_criterion_3_theorem1(cfg, capsys):
    t = time.perf_counter()
    checks = _by_name(suite_theorem1(cfg, _model(cfg)))
    dt = time.perf_counter() - t
    first, second = checks["theorem1_first_slot"], checks["theorem1_second_slot"]
    ok = (first.passed and second.passed
          and first.witness["trials"] == 200 and second.witness["trials"] == 200)
    _report(capsys, 3, "Theorem 1 exact zeros", ok, dt, 120)


def test_criterion_4_dimensions(cfg, capsys):
    t = time.perf_counter()
    checks = _by_name(suite_sequence(cfg, _model(cfg)))
    dt = time.perf_counter() - t
    ok = checks["stabilization"].passed
    for name in ("exact_sequence_N10", "exact_sequence_N12"):
        w = checks[name].witness
        ok = ok and checks[name].passed and (w["dim_H0_K2"], w["dim_H1_T"], w["dim_H1"]) == (3, 3, 6)
        ok = ok and w["rank_alpha1"] == 3 and w["rank_alpha2"] == 3 and w["ker_alpha2_eq_im_alpha1"]
    _report(capsys, 4, "hypercohomology dimensions 3/3/6", ok, dt, 120)


def test_criterion_5_descended_form(cfg, capsys):
    t = time.perf_counter()
    checks = _by_name(suite_pairing(cfg, _model(cfg)))
    dt = time.perf_counter() - t
    rep = checks["descended_antisymmetric"].witness["report"]
    M = [[Fraction(x) for x in row] for row in rep["matrix"]]
    antisym = len(M) == 6 and all(M[i][j] == -M[j][i] for i in range(6) for j in range(6))
    iso = all(M[i][j] == 0 for i in range(3) for j in range(3))
    ok = (antisym and iso and checks["descended_rank"].witness["rank"] == 6
          and all(checks[n].passed for n in ("descended_antisymmetric", "descended_rank",
                                             "vertical_isotropic", "well_defined_under_shifts")))
    _report(capsys, 5, "descended form antisymmetric, rank 6, Lagrangian", ok, dt, 120)


def test_criterion_6_residues(cfg, capsys):
    t = time.perf_counter()
    checks = _by_name(residue_checks(cfg))
    dt = time.perf_counter() - t
    thm, par = checks["residue_theorem"], checks["residue_parameter_independence"]
    ok = (thm.passed and thm.witness["forms"] == 50
          and par.passed and len(set(par.witness["residues"].values())) == 1)
    _report(capsys, 6, "residue machinery", ok, dt, 30)


def test_criterion_7_character_variety(capsys):
    cfg = ScenarioConfig.from_dict({"seed": SEED, "genera": [2]})
    t = time.perf_counter()
    (check,) = suite_goldman(cfg)
    dt = time.perf_counter() - t
    rep = check.witness["report"]
    worst = rep["worst"]
    ok = (check.passed and rep["seeds"] == 20 and rep["ranks"] == {"Z1": 9, "B1": 3, "H1": 6}
          and worst["coboundary_rel"] <= COBOUNDARY_TOL
          and worst["antisymmetry_rel"] <= ANTISYMMETRY_TOL
          and rep["min_det_margin_root"] > DET_MARGIN_ROOT)
    detail = (f" coboundary={worst['coboundary_rel']:.1e} antisym={worst['antisymmetry_rel']:.1e}"
              f" det_margin_root>={rep['min_det_margin_root']:.3f}")
    _report(capsys, 7, "character variety g=2", ok, dt, 60, detail)


def test_criterion_8_determinism(tmp_path, capsys):
    outs = []
    t = time.perf_counter()
    for name in ("a.json", "b.json"):
        path = tmp_path / name
        code = cli.main(["all", "--seed", str(SEED), "--out", str(path)])
        outs.append((code, json.loads(path.read_text())))
    dt = time.perf_counter() - t
    (ca, ra), (cb, rb) = outs
    ra.pop("timestamp")
    rb.pop("timestamp")
    ok = ca == cb == cli.EXIT_PASS and ra == rb
    # the limit applies to one run of the full suite
    _report(capsys, 8, "determinism of `all`", ok, dt / 2, 600)
