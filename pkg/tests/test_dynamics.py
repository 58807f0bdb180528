import math
from fractions import Fraction

import numpy as np
import pytest

from reebcz import dynamics
from reebcz import geometry as geo
from reebcz.errors import DegenerateOrbitError
from reebcz.exact import Angle
from reebcz.geometry import Family, LinkParams


@pytest.fixture(scope="module")
def p2():
    return LinkParams(2)


def test_closed_form_flow_examples(p2):
    T = math.pi / 1.001
    assert np.allclose(dynamics.flow_closed_form(p2, (0, 1, 0), T), (0, 1, 0), atol=1e-14)
    p = np.array([0.3, 0.1j, -0.2])
    assert np.array_equal(dynamics.flow_closed_form(p2, p, 0.0), p)
    assert np.allclose(dynamics.flow_closed_form(LinkParams(1), (1, 0, 0), math.pi), (1, 0, 0), atol=1e-14)


def test_simple_orbits(p2):
    orbits = dynamics.enumerate_simple_orbits(p2)
    assert [o.family for o in orbits] == [Family.PLUS, Family.MINUS]
    assert orbits[0].period == Angle(Fraction(1000, 1001))
    assert orbits[1].period == Angle(Fraction(1000, 999))
    assert orbits[0].start == (0, 1, 0) and orbits[1].start == (0, 0, 1)


def test_gamma0_rejected(p2):
    cands = {c.label: c for c in dynamics.candidate_orbits(p2)}
    assert not cands["gamma0"].accepted
    assert cands["gamma0"].start == (1, 0, 0)
    assert cands["gamma0"].f_value == 1
    assert "not a zero" in cands["gamma0"].reason


def test_homotopy_classes(p2):
    assert dynamics.orbit(p2, "plus", 3).homotopy_class == 0
    assert dynamics.orbit(p2, "plus", 3).contractible
    assert dynamics.orbit(p2, "minus", 4).homotopy_class == 1
    assert not dynamics.orbit(p2, "minus", 4).contractible


def test_orbit_json(p2):
    doc = dynamics.orbit(p2, "minus", 2).to_json()
    assert doc["period_over_pi"] == "2000/999"
    assert doc["period"] == pytest.approx(2000 / 999 * math.pi)


def test_return_map_plus(p2):
    res = dynamics.return_map(p2, dynamics.orbit(p2, "plus", 1))
    assert res.orbit_index == 1
    assert abs(res.eigenvalues[1] - 1) < 1e-12
    assert res.nondegenerate
    assert res.min_distance_to_one > 1e-3


def test_return_map_minus_angles(p2):
    res = dynamics.return_map(p2, dynamics.orbit(p2, "minus", 1))
    T = Fraction(1000, 999)
    assert res.xi_angles == (Angle(Fraction(4, 3) * T), Angle(Fraction(2002, 1000) * T))
    assert np.allclose(np.abs(res.eigenvalues), 1, atol=1e-12)


def test_return_map_nondegenerate_up_to_n_max(p2):
    for N in range(1, 101):
        for fam in Family:
            assert dynamics.return_map(p2, dynamics.orbit(p2, fam, N)).nondegenerate


def test_resonant_return_map_raises():
    params = LinkParams(2, Fraction(1, 3), n_max=0)
    with pytest.raises(DegenerateOrbitError):
        dynamics.return_map(params, dynamics.orbit(params, "plus", 2))


def test_rk4_matches_closed_form(p2):
    for orb in dynamics.enumerate_simple_orbits(p2):
        T = orb.period.radians
        num = dynamics.flow_rk4(p2, orb.start, T, T / 1e4)
        assert np.max(np.abs(num - np.array(orb.start))) < 1e-6


def test_rk4_conserves_norm_and_H(p2):
    p = geo.sample_link(p2, 1, seed=6)[0]
    T = math.pi / 0.999
    q = dynamics.flow_rk4(p2, p, T, T / 1e4)
    assert abs(np.sum(np.abs(q) ** 2) - 1) < 1e-6
    assert abs(geo.eval_H(p2, q) - geo.eval_H(p2, p)) < 1e-6


def test_rk4_is_fourth_order():
    # halving the step should cut the error by about 16
    params = LinkParams(1)
    p = np.array([0.6, 0.0, 0.8j])
    exact = dynamics.flow_closed_form(params, p, 1.0)
    e1 = np.max(np.abs(dynamics.flow_rk4(params, p, 1.0, 0.1) - exact))
    e2 = np.max(np.abs(dynamics.flow_rk4(params, p, 1.0, 0.05) - exact))
    assert 12 < e1 / e2 < 20


def test_rk4_rejects_bad_step(p2):
    with pytest.raises(ValueError):
        dynamics.flow_rk4(p2, (0, 1, 0), 1.0, 0.0)


def test_flow_preserves_link():
    for n in (1, 2, 5):
        params = LinkParams(n)
        T = dynamics.orbit(params, "minus").period.radians
        for p in geo.sample_link(params, 100, seed=2):
            for t in np.linspace(0, 2 * T, 7):
                q = dynamics.flow_closed_form(params, p, t)
                assert abs(geo.eval_f(params, q)) < 1e-9
                assert abs(np.sum(np.abs(q) ** 2) - 1) < 1e-9


def test_f_transforms_along_flow():
    rng = np.random.default_rng(0)
    params = LinkParams(3)
    for _ in range(100):
        z = rng.standard_normal(3) + 1j * rng.standard_normal(3)
        t = rng.uniform(0, 5)
        lhs = geo.eval_f(params, dynamics.flow_closed_form(params, z, t))
        assert abs(lhs - np.exp(4j * t) * geo.eval_f(params, z)) < 1e-9


@pytest.mark.parametrize("a", [(2, 2, 2), (3, 2, 2), (2, 3, 5), (4, 6, 3)])
def test_brieskorn_flow_all_orbits_closed(a):
    T = dynamics.brieskorn_common_period(a).radians
    for z in geo.sample_brieskorn(a, 20, seed=4):
        assert np.max(np.abs(dynamics.brieskorn_flow(a, z, T) - z)) < 1e-12
        # and the flow stays on Sigma(a)
        assert abs(geo.brieskorn_f(a, dynamics.brieskorn_flow(a, z, 0.37 * T))) < 1e-12
