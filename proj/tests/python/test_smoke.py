import math

import numpy as np
import pytest

import epsrs


def test_toy_ep2_strength():
    d = 2e-3
    h = epsrs.toy_h0(0.0, d)
    r = epsrs.xi(h, 0.0, radius=1e-11)
    assert r["order"] == 2
    assert r["converged"]
    assert abs(r["xi"] - math.sqrt(1 + 1 / d**2)) <= 1e-12 * r["xi"]
    w = r["W"]
    assert w.shape == (3, 3)
    assert abs(w[1, 2] + 1) < 1e-12


def test_toy_ep3_and_special_route():
    h = epsrs.toy_h0(0.0, 0.0)
    cs = epsrs.clusters(h)
    assert len(cs) == 1 and cs[0]["order"] == 3
    assert epsrs.xi(h, 0.0)["xi"] == pytest.approx(1.0, rel=1e-12)
    assert epsrs.xi_special(h, 0.0, 3)["xi"] == 1.0


def test_eigenvalues_match_numpy():
    rng = np.random.default_rng(5)
    a = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
    ours = np.sort_complex(np.array(epsrs.eigenvalues(a)))
    ref = np.sort_complex(np.linalg.eigvals(a))
    assert np.max(np.abs(ours - ref)) < 1e-12


def test_greens_function_is_inverse():
    h = epsrs.toy_h0(0.0, 0.5)
    e = 0.3 + 0.2j
    g = epsrs.greens_function(h, e)
    assert np.allclose(g @ (e * np.eye(3) - h), np.eye(3), atol=1e-13)


def test_petermann():
    pairs = epsrs.petermann_factors(np.array([[0, 1], [0, 0.5]], dtype=complex))
    assert {round(k, 12) for _, k in pairs} == {5.0}
    with pytest.raises(epsrs.AtEpError):
        epsrs.petermann_factors(np.array([[0, 1], [0, 0]], dtype=complex))
    jordan = np.array([[0, 1], [0, 0]], dtype=complex)
    assert epsrs.xi_via_petermann(jordan, 0.0, 2, 1e-16, 7) == pytest.approx(1.0, rel=1e-4)


def test_chirality_ep4():
    h = epsrs.chirality_h0(1 - 0.5j, 1 - 2j, 0.75, 1.0)
    r = epsrs.xi(h, 1 - 1.25j)
    assert r["order"] == 4
    assert r["xi"] == pytest.approx(1.125, rel=1e-10)


def test_tables():
    t = epsrs.fig2(lo=1e-3, hi=1e-1, per_decade=5)
    assert list(t) == ["detuning", "splitting", "bound_ep2", "bound_ep3"]
    assert np.isinf(t["bound_ep2"][0])
    a = epsrs.fig5(points=5)
    b = epsrs.fig5(points=5)
    assert np.array_equal(a["err_residue"], b["err_residue"])
    s = epsrs.toy_surface_scan(1e-3, 1e-2, 4)
    assert np.all(np.abs(s["compensated"] - 1) < 1e-3)


def test_errors():
    with pytest.raises(epsrs.InputError):
        epsrs.eigenvalues(np.zeros(3, dtype=complex))
    with pytest.raises(epsrs.DomainError):
        epsrs.toy_h0(0.0, 1.0, a=0.0)
    with pytest.raises(epsrs.NotAnEpError):
        epsrs.xi_special(np.eye(2, dtype=complex), 1.0, 2)
