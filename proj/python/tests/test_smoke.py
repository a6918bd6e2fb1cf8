import math

import pytest

import zeno_lab as zl


def test_params_and_critical_rate():
    p = zl.ModelParams(1.0, 0.0, 0.5)
    assert p.omega == pytest.approx(1.0)
    assert zl.critical_rate(p) == pytest.approx(1.0)
    assert zl.critical_rate(zl.ModelParams(1.0, 2.0, 0.5)) == pytest.approx(math.sqrt(5.0) / 2.0)


def test_pulsed_rates():
    p = zl.ModelParams(1.0, 0.0, 2.0)
    pj = zl.jump_probability(p)
    assert pj == pytest.approx(math.sin(0.25) ** 2, rel=1e-12)
    assert zl.pulsed_gamma_mix(p) == pytest.approx(2.0 * math.log(1.0 / (1.0 - 2.0 * pj)), rel=1e-12)


def test_stabilized_rate_at_crossover():
    p = zl.ModelParams(1.0, 1.0, math.sqrt(2.0) / 2.0)
    assert zl.gamma0_stabilized(p) == pytest.approx(1.0 / (2.0 * math.sqrt(2.0)), rel=1e-12)


def test_orthogonal_regimes():
    assert zl.orthogonal_rates(zl.ModelParams(1.0, 0.0, 0.2))["regime"] == "underdamped"
    assert zl.orthogonal_rates(zl.ModelParams(1.0, 0.0, 5.0))["regime"] == "overdamped"


def test_lindblad_matches_closed_form():
    p = zl.ModelParams(1.0, 0.0, 0.3)
    r = zl.lindblad_z(p, 5.0, 0.01)
    for t, z in zip(r["t"], r["z"]):
        assert z == pytest.approx(zl.orthogonal_z(p, t), abs=1e-6)


def test_ensembles_are_seeded():
    p = zl.ModelParams(1.0, 0.0, 1.0)
    a = zl.pulsed_ensemble(p, 20, 200, 7, workers=1)
    b = zl.pulsed_ensemble(p, 20, 200, 7, workers=3)
    assert a["z"] == b["z"]
    assert len(a["t"]) == 21
    c = zl.continuous_ensemble(p, 1.0, 50, 3, record_every=10)
    assert c["trajectories"] == 50


def test_response_scan_finds_crossover():
    p = zl.ModelParams(1.0, 3.0, 1.0)
    gammas = zl.log_grid(0.05, 50.0, 401)
    scan = zl.response_scan(p, gammas, "continuous_stabilized")
    assert scan["gamma_crit"] == pytest.approx(zl.critical_rate(p), rel=0.02)


def test_errors_carry_kind():
    with pytest.raises(zl.ZenoError) as info:
        zl.run_config("mode = nonsense\n")
    assert info.value.kind in {"parse", "configuration", "invalid_argument"}


def test_run_config_csv():
    text = "mode = ensemble_ode\nomega_r = 1\ngamma = 0.5\nt_final = 2\n"
    out = zl.run_config(text)
    assert out.startswith("# " + zl.schema_version)


def test_single_validation_check():
    ok, line = zl.validate(5)
    assert ok, line
