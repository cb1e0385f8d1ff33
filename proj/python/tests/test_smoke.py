import cmath
import math

import pytest

import pluriharm as ph


def test_arcset_and_closed_form():
    half = ph.ArcSet([(0.0, math.pi)])
    assert half.measure == pytest.approx(math.pi)
    assert half.complement().measure == pytest.approx(math.pi)
    assert ph.omega_disc(0j, half) == pytest.approx(0.5)
    assert ph.omega_disc(0.5j, half) < 0.5
    assert "ArcSet" in repr(half)


def test_errors_map_to_python_exceptions():
    with pytest.raises(ph.DomainError):
        ph.omega_disc(2.0, ph.ArcSet.full())
    with pytest.raises(ValueError):
        ph.omega_grid('{"type": "square"}', h=0.1)


def test_grid_annulus_matches_log_profile():
    rows = ph.omega_grid(
        '{"type": "annulus", "center": [0, 0], "r_in": 0.25, "r_out": 1}', '{"inner_circle": true}', h=1 / 32
    )
    worst = max(abs(w - math.log(math.hypot(x, y) / 0.25) / math.log(4)) for x, y, w in rows)
    assert worst < 1e-3


def test_cross_and_extension():
    legs = '{"domain": {"type": "unit_disc"}, "target": {"arcs": [[0, 4.71238898]]}}'
    cross = ph.Cross(legs, legs)
    assert cross.contains(0j, 0j)
    assert cross.part(cmath.exp(1j), 0.2) == "A x (G u B)"
    A = ph.ArcSet.arc(0.0, 1.5 * math.pi)
    r = ph.carleman_limit("exp(zw)", A, A, 0.3 + 0j, 0.2 + 0j)
    assert abs(r["value"] - cmath.exp(0.06)) < 1e-5
    assert ph.two_constant_bound(0.5, 1.0, 4.0) == pytest.approx(2.0)


def test_hartogs_with_python_callable():
    f = lambda z1, z2: cmath.exp(z1 * z2)
    assert abs(ph.hartogs_extend(f, 0.3, 0.5 + 0.1j, 0.3 - 0.2j) - f(0.5 + 0.1j, 0.3 - 0.2j)) < 1e-10


def test_riemann_map_boundary_is_on_the_circle():
    poly, images = ph.riemann_map_boundary('{"type": "half_disc", "center": [0, 0], "radius": 1}', 1 / 32, 0.5j, 256)
    assert len(poly) == len(images)
    assert all(abs(abs(w) - 1) < 1e-9 for w in images)


def test_fast_criteria():
    results = ph.run_criteria([1, 2])
    assert [r["id"] for r in results] == [1, 2]
    assert all(r["pass"] for r in results)
