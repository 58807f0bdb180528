from fractions import Fraction

import numpy as np
import pytest

from reebcz import geometry as geo
from reebcz.errors import DegenerateOrbitError, PreconditionError
from reebcz.exact import Angle
from reebcz.geometry import LinkParams
from reebcz.lens import (
    CyclicAction,
    check_lens_hypersurface,
    first_lens_resonance,
    lens_orbit,
    lens_orbit_table,
    lens_ratio_scan,
    phi_tilde,
)
from reebcz.ranks import tally_ranks

A2 = Fraction(1001, 1000)


@pytest.mark.parametrize("n", [1, 2, 4, 7])
def test_cyclic_action(n):
    g = CyclicAction(n)
    assert g.det_phase == 0
    assert np.allclose(np.linalg.matrix_power(g.matrix, n + 1), np.eye(2), atol=1e-12)
    rng = np.random.default_rng(n)
    for u, v in geo.sample_s3(100, rng):
        gu, gv = g.apply(u, v)
        assert abs(abs(gu) ** 2 + abs(gv) ** 2 - 1) < 1e-14
        assert abs(geo.eval_f(n, phi_tilde(n, gu, gv))) < 1e-12


def test_phi_tilde_examples():
    assert np.allclose(phi_tilde(3, 1, 0), (0, 1j / np.sqrt(2), 0))
    rng = np.random.default_rng(0)
    for u, v in geo.sample_s3(1000, rng):
        assert abs(geo.eval_f(2, phi_tilde(2, u, v))) < 1e-12


def test_lens_orbit_period():
    o = lens_orbit(2, 1, A2, "gamma2", 3)
    assert o.period == Angle(2 * A2)
    assert o.contractible
    # winding 3 * 2001/1000 / 3 = 2.001
    assert o.cz == 5
    assert o.to_json()["period_over_pi"] == "1001/500"


def test_n2_lens_table():
    t = lens_orbit_table(2, 1, A2, 6)
    assert t.ranks == {1: 2, 3: 3, 5: 3}
    assert all(d % 2 == 1 for d in t.ranks)


@pytest.mark.parametrize("n", range(1, 9))
def test_lens_table_equals_link_table(n):
    lens = lens_orbit_table(n, 1, A2, 41)
    assert lens.same_ranks(tally_ranks(LinkParams(n), 41))
    assert lens.contractible_min_index >= 3


def test_first_contractible_lens_iterate():
    for n in range(1, 6):
        assert lens_orbit(n, 1, A2, "gamma1", n + 1).cz == 3


def test_resonant_lens_parameters():
    with pytest.raises(DegenerateOrbitError):
        lens_orbit_table(2, 1, 1, 6)
    assert first_lens_resonance(2, 1, 1, 10) == ("gamma1", 3)
    assert first_lens_resonance(2, 1, A2, 100) is None


def test_hypersurface_examples():
    assert check_lens_hypersurface(4, 1, 0).value < 1e-14
    s = np.sqrt(2) / 2
    assert check_lens_hypersurface(1, s, s).value < 1e-14
    rng = np.random.default_rng(3)
    for n in (1, 2, 5):
        for u, v in geo.sample_s3(1000, rng):
            assert check_lens_hypersurface(n, u, v).passed


def test_hypersurface_requires_sphere():
    with pytest.raises(PreconditionError):
        check_lens_hypersurface(2, 1, 1)


def test_ratio_scan():
    rows = lens_ratio_scan(2, 41, ["1001/1000", "2"])
    assert rows[0]["pattern"] is True
    assert rows[1]["pattern"] is False and "error" in rows[1]
