"""Forward-mode dual numbers over exact rationals.

A :class:`Dual` carries a value and its full gradient, so running any of the
rational maps on duals yields the exact Jacobian at a point.
"""

from __future__ import annotations

from fractions import Fraction

from .rings import SingularError


class Dual:
    __slots__ = ("val", "grad")

    def __init__(self, val, grad):
        self.val = Fraction(val)
        self.grad = tuple(grad)

    @classmethod
    def variable(cls, val, index: int, n: int) -> Dual:
        return cls(val, [Fraction(int(k == index)) for k in range(n)])

    def _lift(self, other):
        if isinstance(other, Dual):
            return other
        return Dual(other, [Fraction(0)] * len(self.grad))

    def __add__(self, other):
        o = self._lift(other)
        return Dual(self.val + o.val, [a + b for a, b in zip(self.grad, o.grad)])

    __radd__ = __add__

    def __neg__(self):
        return Dual(-self.val, [-g for g in self.grad])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        return Dual(
            self.val * o.val,
            [self.val * b + o.val * a for a, b in zip(self.grad, o.grad)],
        )

    __rmul__ = __mul__

    def inv(self) -> Dual:
        if self.val == 0:
            raise SingularError("cannot invert a dual number with zero value")
        iv = 1 / self.val
        return Dual(iv, [-g * iv * iv for g in self.grad])

    def __truediv__(self, other):
        return self * self._lift(other).inv()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inv()

    def is_zero(self) -> bool:
        return self.val == 0 and not any(self.grad)

    def __repr__(self):
        return f"Dual({self.val}, {list(self.grad)})"
