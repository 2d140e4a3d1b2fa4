"""Cyclic (clock and shift) representations of local Weyl algebras."""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from functools import reduce

import numpy as np

from .rings import CMat


@dataclass(frozen=True)
class CyclicWeylPair:
    M: int
    omega: complex
    u: CMat
    v: CMat

    def relation_residual(self) -> float:
        """``max|uv - omega vu|``."""
        return float(np.max(np.abs(self.u.a @ self.v.a - self.omega * self.v.a @ self.u.a)))


def root_of_unity(M: int, k: int = 1) -> complex:
    return cmath.exp(2j * cmath.pi * k / M)


def clock_shift(M: int) -> tuple[CMat, CMat, complex]:
    """Return ``(X, Z, omega)`` with ``X Z = omega Z X`` and ``X^M = Z^M = I``.

    ``Z = diag(1, omega, ..., omega^(M-1))`` and ``X`` sends basis vector
    ``e_k`` to ``e_{k-1}``.
    """
    if M < 2:
        raise ValueError(f"representation dimension must be >= 2, got {M}")
    omega = root_of_unity(M)
    # exact values at the quarter points keep M=2, M=4 free of rounding noise
    powers = np.array([_clean(omega**k) for k in range(M)], dtype=complex)
    Z = np.diag(powers)
    X = np.zeros((M, M), dtype=complex)
    for k in range(M):
        X[k, (k + 1) % M] = 1.0
    return CMat(X), CMat(Z), _clean(omega)


def _clean(z: complex) -> complex:
    re = round(z.real) if abs(z.real - round(z.real)) < 1e-15 else z.real
    im = round(z.imag) if abs(z.imag - round(z.imag)) < 1e-15 else z.imag
    return complex(re, im)


def embed(op: np.ndarray, site: int, K: int) -> np.ndarray:
    """Kronecker-embed a single-slot operator at tensor slot ``site`` of ``K``."""
    if not 0 <= site < K:
        raise ValueError(f"site {site} outside 0..{K - 1}")
    M = op.shape[0]
    eye = np.eye(M, dtype=complex)
    factors = [op if s == site else eye for s in range(K)]
    return reduce(np.kron, factors)


def weyl_pair(M: int, x: complex, y: complex, site: int = 0, K: int = 1) -> CyclicWeylPair:
    """``u = x X`` and ``v = y Z`` acting on slot ``site`` of a ``K``-fold tensor product."""
    if x == 0 or y == 0:
        raise ValueError("Weyl pair parameters must be nonzero")
    X, Z, omega = clock_shift(M)
    u = CMat(embed(complex(x) * X.a, site, K))
    v = CMat(embed(complex(y) * Z.a, site, K))
    return CyclicWeylPair(M, omega, u, v)
