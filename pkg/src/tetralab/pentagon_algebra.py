"""Structure constants ``m_{a,b,c}^{d,e} = delta(a+b, d) delta(b+c, e) omega2^(a c)``
and a brute-force check of their associativity condition.

Indices live in ``Z_K`` (cyclic mode), or in the integer band ``[-L, L]``
(band mode), where sums leaving the band are truncated.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .report import Report

ASSOC_TOL = 1e-10
MAX_K = 6
MAX_BAND = 2

# Free indices A..F = a1..a6, G H I = c1 c2 c3; x y z = b1 b2 b3 are summed.
_LHS = "ABCxy,xDEGz,yzFHI->ABCDEFGHI"
_RHS = "AxyGH,BDzxI,CEFyz->ABCDEFGHI"
# printed form: last factor reads a5 twice and never a6
_RHS_PRINTED = "AxyGH,BDzxI,CEEyz->ABCDEGHI"


class TruncationWarning(UserWarning):
    """Band-mode contractions drop terms whose indices leave the band."""


@dataclass(frozen=True)
class MTensor:
    """Structure constants over ``Z_K`` (``band=None``) or the integer band ``[-band, band]``."""

    K: int
    omega2: complex
    band: int | None = None

    @classmethod
    def cyclic(cls, K: int, omega2: complex | None = None) -> MTensor:
        if K < 1:
            raise ValueError(f"K must be >= 1, got {K}")
        if omega2 is None:
            omega2 = cmath.exp(2j * math.pi / K)
        return cls(K, complex(omega2))

    @classmethod
    def integer_band(cls, L: int, omega2: complex | None = None) -> MTensor:
        if not 1 <= L <= MAX_BAND:
            raise ValueError(f"band limit must be in 1..{MAX_BAND}, got {L}")
        if omega2 is None:
            # not a root of unity
            omega2 = cmath.exp(2j * math.pi * (math.sqrt(5) - 1) / 2)
        return cls(2 * L + 1, complex(omega2), band=L)

    @property
    def indices(self) -> range:
        if self.band is None:
            return range(self.K)
        return range(-self.band, self.band + 1)

    def _reduce(self, x: int) -> int | None:
        if self.band is None:
            return x % self.K
        return x if -self.band <= x <= self.band else None

    def array(self) -> np.ndarray:
        """Dense ``m[a, b, c, d, e]`` with axes ordered by :attr:`indices`."""
        idx = list(self.indices)
        pos = {v: k for k, v in enumerate(idx)}
        n = len(idx)
        m = np.zeros((n,) * 5, dtype=complex)
        for a in idx:
            for b in idx:
                d = self._reduce(a + b)
                if d is None:
                    continue
                for c in idx:
                    e = self._reduce(b + c)
                    if e is None:
                        continue
                    m[pos[a], pos[b], pos[c], pos[d], pos[e]] = self.omega2 ** (a * c)
        return m


def m_value(t: MTensor, a: int, b: int, c: int, d: int, e: int) -> complex:
    """Single structure constant; index arithmetic is mod ``K`` in cyclic mode."""
    if t.band is None:
        a, b, c, d, e = (x % t.K for x in (a, b, c, d, e))
        if (a + b - d) % t.K or (b + c - e) % t.K:
            return 0j
    elif a + b != d or b + c != e or any(abs(x) > t.band for x in (a, b, c, d, e)):
        return 0j
    return t.omega2 ** (a * c)


def contractions(t: MTensor, corrected: bool = True) -> tuple[np.ndarray, np.ndarray]:
    """Both sides of the associativity condition as arrays over (a1..a6, c1, c2, c3)."""
    m = t.array()
    lhs = np.einsum(_LHS, m, m, m, optimize=True)
    if corrected:
        rhs = np.einsum(_RHS, m, m, m, optimize=True)
    else:
        rhs = np.einsum(_RHS_PRINTED, m, m, m, optimize=True)
        rhs = np.broadcast_to(np.expand_dims(rhs, 5), lhs.shape)
    return lhs, rhs


def _safe_mask(t: MTensor) -> np.ndarray:
    """Entries whose summed indices (pair sums of the a's) stay inside the band."""
    idx = np.array(list(t.indices))
    inner = np.abs(idx) <= t.band // 2
    mask = np.ones((len(idx),) * 9, dtype=bool)
    for axis in range(6):
        shape = [1] * 9
        shape[axis] = len(idx)
        mask &= inner.reshape(shape)
    return mask


def verify_associativity(t: MTensor, corrected: bool = True, tol: float = ASSOC_TOL, max_listed: int = 20) -> Report:
    """Compare the two triple contractions for every free index assignment.

    ``corrected=False`` uses the printed index pattern (last factor
    ``m_{a3,a5,a5}``), which is expected to fail once ``K >= 2``.
    """
    if t.band is None and t.K > MAX_K:
        raise ValueError(f"brute force limited to K <= {MAX_K}")
    label = "corrected" if corrected else "printed"
    mode = f"Z_{t.K}" if t.band is None else f"band[-{t.band},{t.band}]"
    rep = Report(check=f"associativity({label})", ring=mode)
    lhs, rhs = contractions(t, corrected)
    diff = np.abs(lhs - rhs)
    if t.band is not None:
        mask = _safe_mask(t)
        dropped = int(mask.size - mask.sum())
        warnings.warn(
            f"band mode: {dropped} of {mask.size} index assignments reach outside the band and are not compared",
            TruncationWarning,
            stacklevel=2,
        )
        diff = np.where(mask, diff, 0.0)
        rep.details["compared"] = int(mask.sum())
    else:
        rep.details["compared"] = int(diff.size)
    bad = np.argwhere(diff > tol)
    idx = list(t.indices)
    rep.trials = 1
    rep.max_residual = float(diff.max()) if diff.size else 0.0
    for row in bad[: max(1, max_listed)]:
        a1, a2, a3, a4, a5, a6, c1, c2, c3 = (idx[k] for k in row)
        rep.failures.append(
            {"a": [a1, a2, a3, a4, a5, a6], "c": [c1, c2, c3], "residual": float(diff[tuple(row)])}
        )
    rep.details["failing_assignments"] = int(len(bad))
    rep.details["tol"] = tol
    return rep
