from fractions import Fraction as Fr

import numpy as np
import pytest

from tetralab.core import CMat, SingularError
from tetralab.maps import (
    RATIONAL,
    Sampler,
    WPair,
    cyclic_sampler,
    pentagon_forward,
    pentagon_inverse,
    tetra_map,
    tetra_map_a,
    verify_pentagon,
    verify_structure,
    verify_structure_random,
    verify_ten_term,
    verify_tetrahedron,
)
from tetralab.maps.verify import apply_word


def corrupted(w1, w2):
    (a, b), (c, d) = pentagon_forward(w1, w2)
    return WPair(2 * a, b), WPair(c, d)


def test_composition_convention():
    # pentagon holds with left-first application; the reversed reading must fail
    rng_point = RATIONAL(np.random.default_rng(1), 3)
    lhs = apply_word(rng_point, ((0, 1), (1, 2)), pentagon_forward)
    rhs = apply_word(rng_point, ((1, 2), (0, 2), (0, 1)), pentagon_forward)
    assert lhs == rhs
    swapped = apply_word(rng_point, ((0, 1), (0, 2), (1, 2)), pentagon_forward)
    assert swapped != lhs


def test_pentagon_rational():
    rep = verify_pentagon(trials=50, seed=0)
    assert rep.passed and rep.trials == 50 and rep.max_residual == 0


def test_pentagon_with_inverse_round_trip():
    assert verify_pentagon(pentagon_forward, pentagon_inverse, trials=20).passed


def test_pentagon_detects_mutation():
    rep = verify_pentagon(corrupted, trials=5)
    assert not rep.passed and rep.failures[0]["trial"] == 0


def test_pentagon_cyclic():
    rep = verify_pentagon(trials=5, sampler=cyclic_sampler(2), tol=1e-9)
    assert rep.passed


def test_ten_term_rational_and_mutation():
    assert verify_ten_term(trials=50).passed
    bad_inverse = lambda w1, w2: pentagon_inverse(WPair(w1.u, 2 * w1.v), w2)  # noqa: E731
    assert not verify_ten_term(inverse=bad_inverse, trials=5).passed


def test_tetrahedron_wrong_wiring_fails():
    assert verify_tetrahedron(tetra_map_a, trials=10).passed
    bad = ((0, 1, 2), (0, 3, 4), (1, 3, 5), (1, 4, 5))
    assert not verify_tetrahedron(tetra_map_a, trials=10, wiring=bad).passed


def test_tetrahedron_variant_b_rational():
    assert verify_tetrahedron(lambda *w: tetra_map(*w, variant="B"), trials=20).passed


def test_tetrahedron_generic_matrices_not_satisfied():
    # without the Weyl relation neither printed ordering solves the equation
    def draw(rng, n):
        m = lambda: CMat(np.eye(3) + 0.3 * rng.normal(size=(3, 3)))  # noqa: E731
        return [WPair(m(), m()) for _ in range(n)]

    free = Sampler("matrix", draw, False)
    for variant in "AB":
        rep = verify_tetrahedron(lambda *w: tetra_map(*w, variant=variant), trials=3, sampler=free)
        assert rep.max_residual > 1e-3


def test_all_singular_raises():
    zero = Sampler("zeros", lambda rng, n: [WPair(Fr(1), Fr(0))] * n, True)
    with pytest.raises(SingularError):
        verify_pentagon(trials=2, sampler=zero)


def test_structure_examples():
    point = [WPair(Fr(1), Fr(4)), WPair(Fr(2), Fr(5)), WPair(Fr(3), Fr(6))]
    assert verify_structure(tetra_map_a, point).passed
    square = lambda w: (WPair(w.u * w.u, w.v),)  # noqa: E731
    assert not verify_structure(square, [WPair(Fr(2), Fr(3))]).passed


def test_structure_random_rational_and_cyclic():
    assert verify_structure_random(pentagon_forward, 2, 10, 0).passed
    assert verify_structure_random(tetra_map_a, 3, 10, 0).passed
    assert verify_structure_random(pentagon_forward, 2, 3, 0, cyclic_sampler(3)).passed
