"""Local rational maps on Weyl pairs.

All formulas keep the printed factor order, so the same code runs over
Fractions, complex numbers, dual numbers and :class:`~tetralab.core.CMat`.
"""

from __future__ import annotations

from typing import NamedTuple

from ..core.rings import inv


class WPair(NamedTuple):
    u: object
    v: object


def pentagon_forward(w1: WPair, w2: WPair) -> tuple[WPair, WPair]:
    """Pentagon map on two Weyl pairs (quadrilateral re-dissection)."""
    u1, v1 = w1
    u2, v2 = w2
    iv2 = inv(v2)
    s = v1 + u2
    isum = inv(s)
    return (
        WPair(iv2 * u1, iv2 * s),
        WPair(u2 * isum * u1, v1 * isum * v2),
    )


def pentagon_inverse(w1: WPair, w2: WPair) -> tuple[WPair, WPair]:
    """Inverse of :func:`pentagon_forward`, valid in any associative algebra.

    From ``v1' v2 = v1 + u2`` one gets ``v1 = v2' v1'`` and
    ``u2 = u2' u1'^-1 v1'``; then ``v2 = v2' + u2' u1'^-1`` and
    ``u1 = v2 u1' = v2' u1' + u2'``.
    """
    p1, q1 = w1
    p2, q2 = w2
    ip1 = inv(p1)
    v1 = q2 * q1
    u2 = p2 * ip1 * q1
    v2 = q2 + p2 * ip1
    u1 = q2 * p1 + p2
    return WPair(u1, v1), WPair(u2, v2)


def tetra_map(w1: WPair, w2: WPair, w3: WPair, variant: str = "A") -> tuple[WPair, WPair, WPair]:
    """Tetrahedral map on three Weyl pairs.

    Variant ``"A"`` is the ordering used for the lattice evolution; ``"B"``
    is the ordering that solves the functional tetrahedron equation in the
    free algebra.  They coincide when different indices commute.
    """
    u1, v1 = w1
    u2, v2 = w2
    u3, v3 = w3
    s = v1 + u3
    isum = inv(s)
    iu1 = inv(u1)
    iv3 = inv(v3)
    if variant == "A":
        return (
            WPair(u2 + u1 * v2 * iv3, iv3 * s * v2),
            WPair(u3 * isum * u1, v1 * isum * v3),
            WPair(iu1 * s * u2, v2 + iu1 * u2 * v3),
        )
    if variant == "B":
        return (
            WPair(u2 + v2 * iv3 * u1, v2 * iv3 * s),
            WPair(u3 * isum * u1, v1 * isum * v3),
            WPair(u2 * iu1 * s, v2 + u2 * iu1 * v3),
        )
    raise ValueError(f"unknown tetrahedral variant {variant!r}")


def tetra_map_a(w1, w2, w3):
    return tetra_map(w1, w2, w3, "A")


def tetra_map_b(w1, w2, w3):
    return tetra_map(w1, w2, w3, "B")
