import cmath
import math

import numpy as np
import pytest

from tetralab.core import SingularError
from tetralab.maps import (
    PHASE,
    DegenerateConfiguration,
    GeoQuad,
    geo_F,
    geo_pentagon,
    geo_pentagon_inverse,
    geo_pentagon_inverse_newton,
    geo_pentagon_inverse_newton_pairs,
    geo_pentagon_pairs,
    quad_angles,
    random_convex_quad,
    triangle_angles,
    verify_geometric,
    verify_pentagon,
    verify_ten_term,
)

SQUARE = ((1, -1), (0, 0), (1, 1), (2, 0))


def close(g, h, tol=1e-12):
    return max(abs(x - y) for x, y in zip(g.as_tuple(), h.as_tuple())) <= tol


def test_unit_square_angles():
    unprimed, primed = quad_angles(*SQUARE)
    assert close(unprimed, GeoQuad(1j, -1, -1, 1j))
    assert close(primed, GeoQuad(-1, 1j, 1j, 1j))


def test_unit_square_map():
    g = GeoQuad(1j, -1, -1, 1j)
    assert geo_F(*g.as_tuple()) == -1
    assert geo_pentagon(g) == GeoQuad(-1, 1j, 1j, 1j)


def test_flat_configuration_is_degenerate():
    with pytest.raises(DegenerateConfiguration):
        geo_pentagon(GeoQuad(1, 1, 1, 1))


def test_quad_angles_rejects_nonconvex():
    with pytest.raises(ValueError):
        quad_angles((1, -1), (0, 0), (1, 1), (1, 0))
    with pytest.raises(ValueError):
        quad_angles((0, 0), (1, 0), (2, 0), (1, 1))


def test_triangle_angles_sum_to_pi():
    rng = np.random.default_rng(4)
    for _ in range(50):
        P, Q, R = (tuple(rng.normal(size=2)) for _ in range(3))
        assert abs(sum(triangle_angles(P, Q, R)) - math.pi) <= 1e-10


def test_map_matches_measured_angles():
    rep = verify_geometric(trials=100, seed=3, tol=1e-9)
    assert rep.passed


def test_closed_form_inverse_matches_newton():
    rng = np.random.default_rng(8)
    for _ in range(20):
        unprimed, primed = quad_angles(*random_convex_quad(rng))
        closed = geo_pentagon_inverse(primed)
        assert close(closed, unprimed, 1e-9)
        assert close(geo_pentagon_inverse_newton(primed), closed, 1e-8)


def test_newton_inverse_reports_failure():
    # not in the image of the map: F cannot vanish
    with pytest.raises(SingularError):
        geo_pentagon_inverse_newton(GeoQuad(1, 0, 1, 1), max_steps=3)


def test_functional_identities_with_newton_inverse():
    assert verify_pentagon(geo_pentagon_pairs, trials=20, sampler=PHASE, tol=1e-8).passed
    rep = verify_ten_term(geo_pentagon_pairs, geo_pentagon_inverse_newton_pairs, trials=10, sampler=PHASE, tol=1e-8)
    assert rep.passed


def test_phases_have_unit_modulus():
    rng = np.random.default_rng(1)
    for g in quad_angles(*random_convex_quad(rng)):
        assert all(abs(abs(z) - 1) <= 1e-12 for z in g.as_tuple())
    assert abs(cmath.phase(quad_angles(*SQUARE)[0].u1) - math.pi / 2) <= 1e-12
