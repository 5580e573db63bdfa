"""Smoke tests for the python module built from the C++ core."""

import math

import pytest

import pcr3bp


@pytest.fixture
def cfg():
    return pcr3bp.SystemConfig(0.3)


def test_hamiltonian_forms_agree(cfg):
    q, p = (0.8, 0.3), (-0.2, 0.6)
    a = pcr3bp.hamiltonian(q, p, cfg)
    b = pcr3bp.hamiltonian_completed(q, p, cfg)
    assert abs(a - b) < 1e-12


def test_equal_masses_midpoint():
    half = pcr3bp.SystemConfig(0.5)
    assert pcr3bp.hamiltonian((0.0, 0.0), (0.0, 0.0), half) == pytest.approx(-2.0)
    assert pcr3bp.find_L1_distance(half) == pytest.approx(0.5, abs=1e-13)
    assert pcr3bp.mu_from_d(0.5) == pytest.approx(0.5, abs=1e-15)


def test_singularity_is_typed(cfg):
    with pytest.raises(pcr3bp.SingularityError):
        pcr3bp.effective_potential(tuple(cfg.moon_pos), cfg)


def test_lagrange_points(cfg):
    points, d = pcr3bp.find_lagrange_points(cfg)
    assert len(points) == 5
    values = [p["value"] for p in points]
    assert values[0] < values[1] < values[2] < values[3]
    assert values[3] == pytest.approx(values[4], abs=1e-14)
    assert 0 < d < 1
    assert pcr3bp.rho_hessian(tuple(points[0]["position"]), cfg) >= 4.0


def test_hill_components(cfg):
    points, _ = pcr3bp.find_lagrange_points(cfg)
    below = pcr3bp.hill_components(points[0]["value"] - 0.05, cfg, resolution=200)
    assert below["bounded_components"] == 2
    assert not below["merged"]
    above = pcr3bp.hill_components(
        0.5 * (points[0]["value"] + points[1]["value"]), cfg, resolution=200
    )
    assert above["merged"]


def test_moser_round_trip():
    xi, eta = pcr3bp.stereo_lift((1.0, 0.0), (0.0, 1.0))
    assert tuple(xi) == pytest.approx((0.0, 1.0, 0.0), abs=1e-15)
    assert tuple(eta) == pytest.approx((0.0, 0.0, 1.0), abs=1e-15)
    x, y = pcr3bp.stereo_project(xi, eta)
    assert tuple(x) == pytest.approx((1.0, 0.0), abs=1e-14)
    assert tuple(y) == pytest.approx((0.0, 1.0), abs=1e-14)


def test_geodesic_hamiltonian():
    xi, eta = pcr3bp.stereo_lift((0.3, -0.4), (0.2, 0.9))
    q = pcr3bp.kepler_regularized_Q(xi, eta, -0.5, rotating_frame=False)
    norm2 = sum(v * v for v in eta)
    assert q == pytest.approx(0.5 * norm2, rel=1e-12)


def test_certification(cfg):
    points, _ = pcr3bp.find_lagrange_points(cfg)
    c = points[0]["value"] - 0.05
    moon = pcr3bp.certify_moon_component(c, cfg, grid=150)
    earth = pcr3bp.certify_earth_component(c, cfg, grid=150)
    assert moon["verdict"] == "certified"
    assert earth["verdict"] == "certified"
    assert moon["min_margin"] > 0

    above = pcr3bp.certify_above_critical(cfg, [1e-3])
    assert above["any_certified"]


def test_polynomial_identities():
    results = pcr3bp.polynomial_identities()
    assert len(results) >= 6
    assert all(exact for _, exact in results)


def test_integration_drift(cfg):
    q0 = (cfg.moon_pos[0] + 0.25, 0.0)
    out = pcr3bp.integrate_rotating(q0, (0.0, q0[0] - 1.42), cfg, T=5.0)
    assert out["energy_drift"] < 1e-10
    t_last = out["samples"][-1][0]
    assert t_last == pytest.approx(5.0)


def test_curvature():
    for k in (-0.5, -1.0, -2.0):
        for _, curv in pcr3bp.conformal_metric_curvature(k, samples=5):
            assert curv == pytest.approx(-2.0 * k, abs=1e-4)
