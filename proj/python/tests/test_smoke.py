"""Smoke tests for the python bindings."""

import json
import math

import pytest

import walker4 as w4


def test_version():
    assert w4.__version__ == "0.1.0"


def test_expr_eval():
    assert w4.eval_value("u*v + x^2", (2.0, 3.0, 4.0, 0.0)) == pytest.approx(22.0)
    # exact fourth derivative via jets
    assert w4.eval_partial("u^4", (1.0, 0, 0, 0), (4, 0, 0, 0)) == pytest.approx(24.0)
    with pytest.raises(w4.ExprParseError):
        w4.eval_value("u +", (0, 0, 0, 0))
    with pytest.raises(w4.ExprEvalError):
        w4.eval_value("1/x", (0, 0, 0, 0))


def test_flat_metric():
    m = w4.WalkerMetric.from_abc("0", "0", "0")
    cs = w4.curvature_summary(m, (0.1, 0.2, 0.3, 0.4))
    assert cs["S"] == 0.0
    assert all(abs(x) == 0.0 for row in cs["w_plus"] for x in row)
    cls = w4.classify(m, (0.1, 0.2, 0.3, 0.4))
    assert cls["case"] == "FlatSD"


def test_theta_flagship():
    m = w4.WalkerMetric.from_theta("u^5")
    p = (0.5, 0.1, -0.2, 0.3)
    a, b, c = m.abc(p)
    assert a == pytest.approx(0.0)
    assert b == pytest.approx(-40.0 * 0.5**3)
    assert c == pytest.approx(0.0)
    sc = w4.spinor_curvature(m, p)
    assert sc["psi"][0] == pytest.approx(-120.0 * 0.5)
    assert all(abs(x) < 1e-12 for x in sc["psi"][1:])
    assert all(abs(x) < 1e-12 for x in sc["psit"])
    cls = w4.classify(m, p)
    assert cls["asd_pattern"] == "{4}"
    rep = w4.theta_analysis("u^5", p)
    assert rep["P"] == pytest.approx(0.0)
    assert rep["einstein_affine"]


def test_scalar_curvature_example():
    m = w4.WalkerMetric.from_abc("u^2", "v^2", "0")
    cs = w4.curvature_summary(m, (0.3, -0.2, 0.6, 0.1))
    assert cs["S"] == pytest.approx(4.0)
    # Lambda = -S/24
    assert cs["lambda"] == pytest.approx(-4.0 / 24.0)
    sc = w4.spinor_curvature(m, (0.3, -0.2, 0.6, 0.1))
    assert sc["psit"][2] == pytest.approx(4.0 / 12.0)
    r = w4.wps_residual(m, (0.3, -0.2, 0.6, 0.1))
    assert max(abs(x) for x in r) < 1e-12


def test_classification_case_iv():
    m = w4.WalkerMetric.from_abc("0", "0", "u*x")
    cls = w4.classify(m, (0.4, 0.1, 0.2, 0.3))
    assert cls["case"] == "Case_iv_31III"
    assert cls["jcf_consistent"]


def test_para_kahler():
    pm = w4.ProductMetric.from_omega("u*x + v*y + 0.25*u^2*x^2")
    rep = w4.para_kahler_analysis(pm, (0.1, 0.05, 0.2, -0.1))
    assert rep["det_positive"]
    assert rep["spectrum_ok"]
    assert rep["e_block_residual"] < 1e-9
    assert rep["first_heavenly_residual"] == pytest.approx(2 * 0.1 * 0.5 * 0.2)


def test_geodesic():
    m = w4.WalkerMetric.from_abc("0.3*u*u", "0.2*v*v", "0.1*u*v")
    res = w4.integrate_geodesic(m, (0, 0, 0, 0), (0.3, -0.2, 0.5, 0.4), 1e-3, 500)
    assert len(res["rows"]) == 501
    assert res["max_norm_drift"] < 1e-8
    norms = [row[9] for row in res["rows"]]
    assert max(norms) - min(norms) < 1e-8


def test_run_spec():
    spec = {
        "kind": "walker",
        "a": "0.2*u^2 + 0.1*x*y",
        "b": "0.3*v^2 - 0.1*x",
        "c": "0.15*u*v",
        "sample": {"count": 3, "box": [[-1, 1]] * 4, "seed": 9},
    }
    res = w4.run_spec(json.dumps(spec), "all")
    assert res["fail"] == 0
    assert res["pass"] == 3
    doc = json.loads(res["json"])
    assert doc["meta"]["seed"] == 9
    assert len(doc["records"]) == 3
    # determinism
    res2 = w4.run_spec(json.dumps(spec), "all")
    assert res2["json"] == res["json"]


def test_second_heavenly():
    assert w4.second_heavenly_residual("0.5*u^2*(1+y^2)", (0.3, 0.2, 0.1, 0.7)) == 0.0
    assert w4.second_heavenly_residual("u^5 + u*x^2", (0.3, 0.2, 0.1, 0.7)) == pytest.approx(0.2)


def test_box_scalar():
    flat = w4.WalkerMetric.from_abc("0", "0", "0")
    assert w4.box_scalar(flat, "u*x", (1, 1, 1, 1)) == pytest.approx(2.0)
    assert w4.box_scalar(flat, "x^2", (1, 1, 1, 1)) == pytest.approx(0.0)


def test_eigenvalue_law():
    m = w4.WalkerMetric.from_abc("u^2 + 0.3*x*y", "v^2 - 0.2*y", "0.5*u*v")
    cs = w4.curvature_summary(m, (0.4, -0.3, 0.2, 0.6))
    s = cs["S"]
    ev = sorted(cs["eigenvalues"])
    want = sorted([-s / 6, s / 12, s / 12])
    assert ev == pytest.approx(want)
