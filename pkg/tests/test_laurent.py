from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from tetralab.core import CMat, Lp2

coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=5)
exps = st.tuples(st.integers(-3, 3), st.integers(-3, 3))
polys = st.dictionaries(exps, coeffs, max_size=5).map(Lp2)

POINT = (Fraction(3, 2), Fraction(-2, 5))


def test_zero_coefficients_pruned():
    p = Lp2({(0, 0): Fraction(0), (1, -1): Fraction(2)})
    assert p.support() == {(1, -1)}
    assert (p - p).is_zero()


@given(polys, polys)
def test_arithmetic_matches_evaluation(p, q):
    lam, mu = POINT
    assert (p + q).evaluate(lam, mu) == p.evaluate(lam, mu) + q.evaluate(lam, mu)
    assert (p * q).evaluate(lam, mu) == p.evaluate(lam, mu) * q.evaluate(lam, mu)
    assert (p - q).evaluate(lam, mu) == p.evaluate(lam, mu) - q.evaluate(lam, mu)


@given(polys, polys)
def test_divexact_recovers_factor(p, q):
    if q.is_zero():
        return
    assert (p * q).divexact(q) == p


def test_divexact_rejects_inexact():
    one = Fraction(1)
    p = Lp2({(0, 0): one, (1, 0): one})
    q = Lp2({(0, 0): one, (0, 1): one})
    with pytest.raises(ArithmeticError):
        p.divexact(q)


def test_negative_power_only_for_monomials():
    m = Lp2.mono(Fraction(2), 1, -1)
    assert m**-2 == Lp2.mono(Fraction(1, 4), -2, 2)
    with pytest.raises((ValueError, ArithmeticError)):
        (m + Lp2.const(Fraction(1))) ** -1


def test_operator_coefficients_keep_order():
    a = CMat(np.array([[0, 1], [0, 0]], dtype=complex))
    b = CMat(np.array([[0, 0], [1, 0]], dtype=complex))
    pa = Lp2.mono(a, 1, 0)
    pb = Lp2.mono(b, 0, 1)
    assert np.allclose((pa * pb).coeff(1, 1).a, (a * b).a)
    assert np.allclose((pb * pa).coeff(1, 1).a, (b * a).a)
