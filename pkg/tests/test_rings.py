import warnings
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from tetralab.core import CMat, ConditionWarning, SingularError, clock_shift, embed, format_rat, inv, parse_rat, weyl_pair
from tetralab.core.rings import commutator_norm, distance, one_like


@pytest.mark.parametrize(
    "text, expected",
    [("3/4", Fraction(3, 4)), ("6/8", Fraction(3, 4)), ("-2", Fraction(-2)), (" 5/-10 ", Fraction(-1, 2)), (7, Fraction(7))],
)
def test_parse_rat(text, expected):
    assert parse_rat(text) == expected


@pytest.mark.parametrize("bad", ["1/0", "a/b", "1.5", 2.5, None])
def test_parse_rat_rejects(bad):
    with pytest.raises(ValueError):
        parse_rat(bad)


@given(st.fractions())
def test_rat_round_trip(x):
    assert parse_rat(format_rat(x)) == x


def test_cmat_inverse_and_product():
    rng = np.random.default_rng(3)
    a = CMat(rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5)))
    assert np.max(np.abs((a * inv(a)).a - np.eye(5))) <= 1e-10
    b = CMat(rng.normal(size=(5, 5)))
    # * is the matrix product, not elementwise
    assert np.allclose((a * b).a, a.a @ b.a)
    assert np.allclose((2 * a).a, 2 * a.a)


def test_cmat_singular():
    with pytest.raises(SingularError):
        inv(CMat(np.array([[1.0, 2.0], [2.0, 4.0]])))
    with pytest.raises(SingularError):
        inv(CMat(np.zeros((3, 3))))


def test_cmat_ill_conditioned_warns():
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        inv(CMat(np.diag([1.0, 1e-13])))
    assert any(issubclass(w.category, ConditionWarning) for w in caught)


def test_scalar_helpers():
    assert inv(Fraction(2, 3)) == Fraction(3, 2)
    with pytest.raises(SingularError):
        inv(Fraction(0))
    assert one_like(CMat(np.eye(3) * 2)).a.tolist() == np.eye(3).tolist()
    assert distance(Fraction(1), Fraction(3)) == 2
    assert commutator_norm(Fraction(2), Fraction(3)) == 0


@pytest.mark.parametrize("M", [2, 3, 5, 7])
def test_clock_shift_relation(M):
    X, Z, omega = clock_shift(M)
    assert np.max(np.abs(X.a @ Z.a - omega * Z.a @ X.a)) <= 1e-12
    assert np.allclose(np.linalg.matrix_power(X.a, M), np.eye(M))
    assert np.allclose(np.linalg.matrix_power(Z.a, M), np.eye(M))
    assert abs(omega**M - 1) <= 1e-12


def test_clock_shift_rejects_small():
    with pytest.raises(ValueError):
        clock_shift(1)
    with pytest.raises(ValueError):
        weyl_pair(3, 0, 1)


def test_weyl_pairs_on_distinct_slots_commute():
    p = weyl_pair(3, 2.0, 1j, site=0, K=3)
    q = weyl_pair(3, -1.0, 0.5, site=2, K=3)
    assert p.relation_residual() <= 1e-10
    for x in (p.u, p.v):
        for y in (q.u, q.v):
            assert commutator_norm(x, y) <= 1e-12
    assert embed(np.eye(2), 1, 3).shape == (8, 8)
