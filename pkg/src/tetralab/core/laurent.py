"""Sparse bivariate Laurent polynomials in (lambda, mu).

Terms live in a dict ``{(a, b): coeff}`` meaning ``coeff * lambda^a * mu^b``.
Coefficients may be Fractions, complex numbers or :class:`CMat`; for CMat
coefficients multiplication keeps the left/right order of the factors.
"""

from __future__ import annotations

from fractions import Fraction

from .rings import inv, is_zero, one_like


class Lp2:
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for k, c in terms.items():
                if not is_zero(c):
                    clean[(int(k[0]), int(k[1]))] = c
        self.terms = clean

    @classmethod
    def const(cls, c) -> Lp2:
        return cls({(0, 0): c})

    @classmethod
    def mono(cls, c, a: int = 0, b: int = 0) -> Lp2:
        return cls({(a, b): c})

    @classmethod
    def zero(cls) -> Lp2:
        return cls()

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def __len__(self):
        return len(self.terms)

    def __getitem__(self, key):
        return self.terms.get(key, 0)

    def coeff(self, a: int, b: int, default=0):
        return self.terms.get((a, b), default)

    def support(self) -> set[tuple[int, int]]:
        return set(self.terms)

    def _lift(self, other):
        if isinstance(other, Lp2):
            return other
        return Lp2.const(other)

    def __add__(self, other):
        other = self._lift(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return Lp2(out)

    __radd__ = __add__

    def __neg__(self):
        return Lp2({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, Lp2):
            return Lp2({k: c * other for k, c in self.terms.items()})
        out = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                k = (a1 + a2, b1 + b2)
                p = c1 * c2
                out[k] = out[k] + p if k in out else p
        return Lp2(out)

    def __rmul__(self, other):
        # scalar on the left
        return Lp2({k: other * c for k, c in self.terms.items()})

    def __pow__(self, n: int):
        if n < 0:
            if not self.is_monomial():
                raise ValueError("only monomials have Laurent inverses")
            (a, b), c = next(iter(self.terms.items()))
            return Lp2.mono(inv(c), -a, -b) ** (-n)
        result = Lp2.const(_one_of(self))
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, Lp2):
            other = Lp2.const(other)
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def map_coeffs(self, f) -> Lp2:
        return Lp2({k: f(c) for k, c in self.terms.items()})

    def shift(self, da: int, db: int) -> Lp2:
        return Lp2({(a + da, b + db): c for (a, b), c in self.terms.items()})

    def leading(self):
        """Lexicographically largest term ``((a, b), coeff)``."""
        k = max(self.terms)
        return k, self.terms[k]

    def divexact(self, other: Lp2) -> Lp2:
        """Exact quotient over a commutative field of coefficients.

        Raises ``ArithmeticError`` if ``other`` does not divide ``self``.
        """
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if other.is_monomial():
            (a, b), c = next(iter(other.terms.items()))
            ic = inv(c)
            return Lp2({(x - a, y - b): v * ic for (x, y), v in self.terms.items()})
        (la, lb), lc = other.leading()
        ilc = inv(lc)
        # any exact quotient has its exponents inside this box
        a_lo = min(k[0] for k in self.terms) - min(k[0] for k in other.terms) if self.terms else 0
        a_hi = max(k[0] for k in self.terms) - max(k[0] for k in other.terms) if self.terms else 0
        b_lo = min(k[1] for k in self.terms) - min(k[1] for k in other.terms) if self.terms else 0
        b_hi = max(k[1] for k in self.terms) - max(k[1] for k in other.terms) if self.terms else 0
        rem = dict(self.terms)
        quot = {}
        dterms = list(other.terms.items())
        while rem:
            ra, rb = max(rem)
            qa, qb = ra - la, rb - lb
            if not (a_lo <= qa <= a_hi and b_lo <= qb <= b_hi):
                raise ArithmeticError("inexact polynomial division")
            qc = rem[(ra, rb)] * ilc
            quot[(qa, qb)] = qc
            for (da, db), dc in dterms:
                k = (da + qa, db + qb)
                nv = rem[k] - qc * dc if k in rem else -(qc * dc)
                if is_zero(nv):
                    rem.pop(k, None)
                else:
                    rem[k] = nv
        return Lp2(quot)

    def evaluate(self, lam, mu):
        total = 0
        for (a, b), c in self.terms.items():
            total = total + c * (lam**a) * (mu**b)
        return total

    def __repr__(self):
        if not self.terms:
            return "Lp2(0)"
        parts = []
        for (a, b), c in sorted(self.terms.items()):
            parts.append(f"({c})*L^{a}*M^{b}")
        return "Lp2(" + " + ".join(parts) + ")"


def _one_of(p: Lp2):
    for c in p.terms.values():
        return one_like(c)
    return Fraction(1)

