import math

import numpy as np
import pytest

import eur

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)


def werner_u(f):
    xl = lambda v: v * math.log2(v) if v > 0 else 0.0
    return 2 - xl(1 - f) - xl(1 + f)


def test_werner_report():
    rho = eur.werner(2, 0.8)
    assert rho.dims == (2, 2)
    r = eur.evaluate_bounds(rho, SX, SZ)
    assert r["U"] == pytest.approx(werner_u(0.8), abs=1e-10)
    assert r["U_b3"] == pytest.approx(r["U"], abs=1e-6)
    assert r["U"] >= r["U_b1"] >= 0
    assert r["concurrence"] == pytest.approx(0.7, abs=1e-9)
    assert r["tightest"].startswith("Ub3")


def test_density_matrix_round_trip_and_validation():
    m = np.eye(4) / 4
    rho = eur.DensityMatrix(m, (2, 2))
    assert np.allclose(rho.matrix, m)
    assert eur.von_neumann(rho) == pytest.approx(2.0)
    with pytest.raises(eur.ValidationError):
        eur.DensityMatrix(np.diag([0.5, 0.6, 0.0, 0.0]), (2, 2))
    with pytest.raises(eur.DimensionError):
        eur.DensityMatrix(m, (2, 3))
    with pytest.raises(eur.DegenerateObservable):
        eur.Observable(np.eye(2))


def test_correlations_and_channels():
    rho = eur.bell_diagonal(-0.8, -0.8, -0.8)
    c = eur.correlations(rho)
    assert c["mutual"] == pytest.approx(c["classical"] + c["discord"], abs=1e-12)
    damped = eur.local_damping(rho, "amplitude", 1.0, 1.0)
    assert np.allclose(damped.matrix, np.diag([1, 0, 0, 0]))
    assert eur.jc_survival(0.0, 1.0, 0.01) == pytest.approx(1.0)
    field = eur.random_field_state(eur.bell_mixture([0.9, 0.1, 0, 0]), math.pi, 0.025)
    assert np.allclose(field.matrix, eur.bell_mixture([0.9, 0.1, 0, 0]).matrix, atol=1e-12)


def test_parse_state_errors():
    assert eur.parse_state("isotropic:d=3,f=0.9").dims == (3, 3)
    with pytest.raises(eur.ParseError):
        eur.parse_state("werner:d=2,g=0.8")


def test_scenario_columns_and_csv():
    out = eur.run_scenario("pd-markov", sweep="0:1:11")
    assert len(out["x"]) == 11
    assert np.ptp(out["Ub3"]) < 1e-9
    assert np.all(np.diff(out["U"]) >= -1e-9)
    assert out["csv"].startswith("# eur ")
    again = eur.run_scenario("pd-markov", sweep="0:1:11", threads=1)
    assert again["csv"] == out["csv"]
    with pytest.raises(eur.ValidationError):
        eur.run_scenario("ad-markov", params={"c9": 1.0})


def test_verify_small():
    r = eur.verify(n=30, dims=(2, 3))
    assert r["violations"] == 0
    assert r["slack_single"] >= -1e-9
