"""Coefficient rings shared by every map and determinant.

Three rings are in play and the map code is written once against all of
them:

* exact rationals (:class:`fractions.Fraction`) for the classical layer,
* Python ``complex`` for the geometric map and quick numerics,
* :class:`CMat`, dense complex matrices for cyclic Weyl representations.

Ring elements only need ``+``, ``-``, ``*`` and :func:`inv`.  ``*`` on a
:class:`CMat` is the matrix product, so noncommutative formulas read the same
way they do on paper.
"""

from __future__ import annotations

import warnings
from fractions import Fraction
from numbers import Number

import numpy as np

COND_WARN_RATIO = 1e12


class SingularError(ArithmeticError):
    """Raised when a ring element that must be inverted is not invertible."""


class ConditionWarning(RuntimeWarning):
    pass


def parse_rat(text) -> Fraction:
    """Parse ``"p/q"`` (or an int / ``"p"``) into a reduced Fraction.

    Non-reduced input is accepted and normalized; a zero denominator is an
    error.
    """
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"rational must be a 'p/q' string, got {text!r}")
    s = text.strip()
    num, sep, den = s.partition("/")
    try:
        p = int(num)
        q = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"malformed rational {text!r}") from None
    if q == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(p, q)


def format_rat(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


class CMat:
    """Square complex matrix used as a noncommutative ring element."""

    __slots__ = ("a",)
    __array_priority__ = 100

    def __init__(self, a):
        a = np.asarray(a, dtype=complex)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
            raise ValueError(f"CMat needs a square matrix, got shape {a.shape}")
        self.a = a

    @classmethod
    def identity(cls, dim: int) -> CMat:
        return cls(np.eye(dim, dtype=complex))

    @classmethod
    def scalar(cls, c, dim: int) -> CMat:
        return cls(complex(c) * np.eye(dim, dtype=complex))

    @property
    def dim(self) -> int:
        return self.a.shape[0]

    def _coerce(self, other):
        if isinstance(other, CMat):
            if other.dim != self.dim:
                raise ValueError(f"dimension mismatch {self.dim} vs {other.dim}")
            return other.a
        if isinstance(other, Number):
            return complex(other) * np.eye(self.dim, dtype=complex)
        return NotImplemented

    def __add__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return CMat(self.a + b)

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return CMat(self.a - b)

    def __rsub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return CMat(b - self.a)

    def __neg__(self):
        return CMat(-self.a)

    def __mul__(self, other):
        if isinstance(other, CMat):
            if other.dim != self.dim:
                raise ValueError(f"dimension mismatch {self.dim} vs {other.dim}")
            return CMat(self.a @ other.a)
        if isinstance(other, Number):
            return CMat(self.a * complex(other))
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, Number):
            return CMat(complex(other) * self.a)
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        return CMat(np.linalg.matrix_power(self.a, k))

    def is_zero(self) -> bool:
        return not np.any(self.a)

    def norm(self) -> float:
        """Max-abs entry norm."""
        return float(np.max(np.abs(self.a)))

    def inv(self) -> CMat:
        return CMat(_pivoted_inverse(self.a))

    def __repr__(self):
        return f"CMat(dim={self.dim})"


def _pivoted_inverse(a: np.ndarray) -> np.ndarray:
    """Gauss-Jordan inverse with partial pivoting.

    Warns with :class:`ConditionWarning` when the largest/smallest pivot ratio
    exceeds ``COND_WARN_RATIO``; raises :class:`SingularError` on a zero pivot.
    """
    n = a.shape[0]
    m = np.hstack([a.astype(complex), np.eye(n, dtype=complex)])
    scale = np.max(np.abs(a)) if a.size else 0.0
    if scale == 0.0:
        raise SingularError("zero matrix is not invertible")
    pivots = []
    for k in range(n):
        p = k + int(np.argmax(np.abs(m[k:, k])))
        piv = abs(m[p, k])
        if piv <= 1e-300 or piv <= scale * 1e-15:
            raise SingularError(f"singular matrix (pivot {piv:.3e} at column {k})")
        if p != k:
            m[[k, p]] = m[[p, k]]
        pivots.append(piv)
        m[k] /= m[k, k]
        col = m[:, k].copy()
        col[k] = 0.0
        m -= np.outer(col, m[k])
    if max(pivots) / min(pivots) > COND_WARN_RATIO:
        warnings.warn(
            f"ill-conditioned inverse: pivot ratio {max(pivots) / min(pivots):.3e}",
            ConditionWarning,
            stacklevel=3,
        )
    return m[:, n:]


def inv(x):
    """Ring inverse; raises :class:`SingularError` instead of dividing by zero."""
    if hasattr(x, "inv"):
        return x.inv()
    if isinstance(x, complex | float):
        if x == 0 or not np.isfinite(abs(x)):
            raise SingularError(f"cannot invert {x!r}")
        return 1 / x
    if x == 0:
        raise SingularError("cannot invert zero")
    return Fraction(1) / x if isinstance(x, int | Fraction) else 1 / x


def one_like(x):
    if isinstance(x, CMat):
        return CMat.identity(x.dim)
    if hasattr(x, "one_like"):
        return x.one_like()
    return type(x)(1) if isinstance(x, Fraction | complex) else 1


def zero_like(x):
    if isinstance(x, CMat):
        return CMat(np.zeros((x.dim, x.dim), dtype=complex))
    if hasattr(x, "zero_like"):
        return x.zero_like()
    return type(x)(0) if isinstance(x, Fraction | complex) else 0


def is_zero(x) -> bool:
    if hasattr(x, "is_zero"):
        return x.is_zero()
    return x == 0


def distance(x, y) -> float:
    """Max-abs difference of two ring elements (0.0 for exact equality)."""
    if isinstance(x, CMat) or isinstance(y, CMat):
        ax = x.a if isinstance(x, CMat) else x
        ay = y.a if isinstance(y, CMat) else y
        return float(np.max(np.abs(ax - ay)))
    if isinstance(x, Fraction) and isinstance(y, Fraction):
        return 0.0 if x == y else float(abs(x - y))
    return float(abs(complex(x) - complex(y)))


def commutator_norm(x, y) -> float:
    """``max|xy - yx|`` for CMat, 0.0 for commutative scalars."""
    if isinstance(x, CMat) and isinstance(y, CMat):
        return float(np.max(np.abs(x.a @ y.a - y.a @ x.a)))
    return 0.0


def ring_name(x) -> str:
    if isinstance(x, CMat):
        return "cyclic"
    if isinstance(x, Fraction):
        return "rational"
    if isinstance(x, complex | float):
        return "complex"
    return type(x).__name__
