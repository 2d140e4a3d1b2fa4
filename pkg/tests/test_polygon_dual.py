from fractions import Fraction

import pytest

from tetralab.core import polygon_points
from tetralab.core import inv
from tetralab.core.dual import Dual


@pytest.mark.parametrize("N", [1, 2, 3, 4, 5])
def test_polygon_counts(N):
    P = polygon_points(N)
    assert len(P) == (3 * N + 2) * (N + 1) // 2
    assert len(P.interior) == (3 * N - 2) * (N - 1) // 2
    assert P.marked in P
    for edge in (P.left, P.bottom, P.left_bottom):
        assert len(edge) == N + 1 and set(edge) <= P.points


def test_polygon_small_sizes():
    assert [len(polygon_points(N)) for N in (1, 2, 3)] == [5, 12, 22]
    with pytest.raises(ValueError):
        polygon_points(0)


def test_dual_gradient_matches_difference_quotient():
    x, y = Fraction(3, 7), Fraction(-2, 5)
    f = lambda a, b: inv(a * b + a) * b - a * a  # noqa: E731
    d = f(Dual.variable(x, 0, 2), Dual.variable(y, 1, 2))
    assert d.val == f(x, y)
    h = Fraction(1, 10**12)
    # exact rational difference quotient converges at rate h
    assert abs((f(x + h, y) - f(x, y)) / h - d.grad[0]) < Fraction(1, 10**9)
    assert abs((f(x, y + h) - f(x, y)) / h - d.grad[1]) < Fraction(1, 10**9)
