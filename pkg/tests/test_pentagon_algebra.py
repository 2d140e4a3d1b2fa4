import itertools

import numpy as np
import pytest

from tetralab.pentagon_algebra import MTensor, TruncationWarning, contractions, m_value, verify_associativity


def brute_force_sides(t: MTensor, corrected=True):
    """Explicit nested sums; independent of the einsum strings."""
    K = t.K
    m = lambda *i: m_value(t, *i)  # noqa: E731
    lhs = np.zeros((K,) * 9, dtype=complex)
    rhs = np.zeros((K,) * 9, dtype=complex)
    for idx in itertools.product(range(K), repeat=9):
        a1, a2, a3, a4, a5, a6, c1, c2, c3 = idx
        for b1, b2, b3 in itertools.product(range(K), repeat=3):
            lhs[idx] += m(a1, a2, a3, b1, b2) * m(b1, a4, a5, c1, b3) * m(b2, b3, a6, c2, c3)
            last = m(a3, a5, a6, b2, b3) if corrected else m(a3, a5, a5, b2, b3)
            rhs[idx] += m(a1, b1, b2, c1, c2) * m(a2, a4, b3, b1, c3) * last
    return lhs, rhs


def test_m_value_examples():
    t = MTensor.cyclic(3)
    w = np.exp(2j * np.pi / 3)
    assert abs(m_value(t, 1, 1, 1, 2, 2) - w) <= 1e-12
    assert m_value(t, 0, 2, 1, 2, 0) == 1
    assert m_value(t, 1, 1, 1, 1, 2) == 0


def test_m_value_support():
    rng = np.random.default_rng(0)
    t = MTensor.cyclic(5)
    for a, b, c, d, e in rng.integers(0, 5, size=(10_000, 5)):
        val = m_value(t, a, b, c, d, e)
        if (a + b - d) % 5 or (b + c - e) % 5:
            assert val == 0
        else:
            assert abs(abs(val) - 1) <= 1e-12


@pytest.mark.parametrize("K", [2, 3])
def test_einsum_matches_nested_sums(K):
    t = MTensor.cyclic(K)
    for corrected in (True, False):
        lhs, rhs = contractions(t, corrected)
        bl, br = brute_force_sides(t, corrected)
        assert np.max(np.abs(lhs - bl)) <= 1e-12
        assert np.max(np.abs(rhs - br)) <= 1e-12


@pytest.mark.parametrize("K", [1, 2, 3, 4, 5])
def test_associativity_corrected(K):
    rep = verify_associativity(MTensor.cyclic(K))
    assert rep.passed and rep.max_residual <= 1e-10


@pytest.mark.parametrize("K", [2, 3, 4])
def test_printed_pattern_fails(K):
    rep = verify_associativity(MTensor.cyclic(K), corrected=False)
    assert not rep.passed and rep.details["failing_assignments"] > 0


def test_non_primitive_root_still_associative():
    # the identity needs only omega2^K = 1
    assert verify_associativity(MTensor.cyclic(4, omega2=-1)).passed


def test_band_mode_warns_and_passes():
    with pytest.warns(TruncationWarning):
        rep = verify_associativity(MTensor.integer_band(2))
    assert rep.passed and rep.details["compared"] > 0


def test_limits():
    with pytest.raises(ValueError):
        MTensor.cyclic(0)
    with pytest.raises(ValueError):
        verify_associativity(MTensor.cyclic(7))
    with pytest.raises(ValueError):
        MTensor.integer_band(5)
