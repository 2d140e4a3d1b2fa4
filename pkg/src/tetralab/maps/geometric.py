"""Euclidean pentagon map on doubled-angle phases of a dissected quadrilateral.

Quadrilateral ``ABCD`` (A bottom, B left, C top, D right) is cut either by
the diagonal ``BD`` into triangles ``BCD`` (1) and ``BAD`` (2), or by ``AC``
into ``ABC`` (1') and ``ACD`` (2').  ``u_j = exp(2i beta_j)`` and
``v_j = exp(2i gamma_j)`` where

==========  =================  ==================
triangle    beta at            gamma at
==========  =================  ==================
1  (BCD)    B                  C
2  (BAD)    A                  B
1' (ABC)    B                  C
2' (ACD)    A                  C
==========  =================  ==================
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..core.rings import SingularError
from ..report import Report
from .local import WPair

DEGENERATE_TOL = 1e-12
AREA_TOL = 1e-9


class DegenerateConfiguration(SingularError):
    """``F`` is 0/0 or has a vanishing denominator."""


@dataclass(frozen=True)
class GeoQuad:
    u1: complex
    v1: complex
    u2: complex
    v2: complex

    def pairs(self) -> tuple[WPair, WPair]:
        return WPair(self.u1, self.v1), WPair(self.u2, self.v2)

    @classmethod
    def from_pairs(cls, w1, w2) -> GeoQuad:
        return cls(w1[0], w1[1], w2[0], w2[1])

    def as_tuple(self):
        return (self.u1, self.v1, self.u2, self.v2)


def geo_F(u1, v1, u2, v2):
    num = u1 * u2 * v1 * v2 - u1 * v1 * v2 - u2 * v1 * v2 + v1 + v2 - 1
    den = u1 * u2 * v1 * v2 - u1 * u2 * v1 - u1 * u2 * v2 + u1 + u2 - 1
    if abs(den) <= DEGENERATE_TOL:
        if abs(num) <= DEGENERATE_TOL:
            raise DegenerateConfiguration("F = 0/0: degenerate quadrilateral")
        raise DegenerateConfiguration("F has a vanishing denominator")
    return -num / den


def geo_pentagon(g: GeoQuad) -> GeoQuad:
    F = geo_F(g.u1, g.v1, g.u2, g.v2)
    if abs(F) <= DEGENERATE_TOL:
        raise SingularError("F = 0")
    return GeoQuad(g.u1 * g.v2, F / g.v2, g.u1 * g.u2 * F, g.v1 * g.v2 / F)


def geo_pentagon_pairs(w1, w2):
    return geo_pentagon(GeoQuad.from_pairs(w1, w2)).pairs()


def geo_pentagon_inverse(g: GeoQuad) -> GeoQuad:
    """Closed-form inverse.

    ``v1 = v1' v2'`` and ``u2 = u2' / (u1' v1')`` directly; the remaining
    unknown ``v2`` solves an equation that is linear once denominators are
    cleared.
    """
    p1, q1, p2, q2 = g.u1, g.v1, g.u2, g.v2
    num = p1 * (p1 * q1 * q2 - p1 * q1 + p2 * q1 * q2 - p2 * q2 - q1 * q2 + 1)
    den = p1 * p2 * q1 * q2 - p1 * p2 - p1 * q1 + p1 - p2 * q2 + p2
    if abs(den) <= DEGENERATE_TOL or abs(num) <= DEGENERATE_TOL:
        raise DegenerateConfiguration("inverse geometric map is singular here")
    v2 = num / den
    return GeoQuad(p1 / v2, q1 * q2, p2 / (p1 * q1), v2)


def geo_pentagon_inverse_pairs(w1, w2):
    return geo_pentagon_inverse(GeoQuad.from_pairs(w1, w2)).pairs()


def geo_pentagon_inverse_newton(g: GeoQuad, tol: float = 1e-10, max_steps: int = 50) -> GeoQuad:
    """Inverse by damped complex Newton iteration on ``geo_pentagon(z) = g``.

    Independent of the closed form; used to cross-check it.  The Jacobian is
    taken by central differences (the map is holomorphic in all four
    arguments).  Starts are the target and a fixed set of points on the unit
    torus.
    """
    target = np.array(g.as_tuple(), dtype=complex)

    def resid(z):
        return np.array(geo_pentagon(GeoQuad(*z)).as_tuple(), dtype=complex) - target

    def size(z):
        try:
            return float(np.max(np.abs(resid(z))))
        except (SingularError, ZeroDivisionError):
            return math.inf

    grid = np.random.default_rng(12345).uniform(0, 2 * np.pi, size=(24, 4))
    starts = [target] + [np.exp(1j * row) for row in grid]
    for z in starts:
        z = z.copy()
        err = size(z)
        for _ in range(max_steps):
            if err <= tol:
                return GeoQuad(*(complex(c) for c in z))
            try:
                r = resid(z)
                jac = np.empty((4, 4), dtype=complex)
                for k in range(4):
                    h = 1e-7 * max(1.0, abs(z[k]))
                    e = np.zeros(4, dtype=complex)
                    e[k] = h
                    jac[:, k] = (resid(z + e) - resid(z - e)) / (2 * h)
                step = np.linalg.solve(jac, r)
            except (SingularError, ZeroDivisionError, np.linalg.LinAlgError):
                break
            t = 1.0
            while t > 1e-4:
                trial = z - t * step
                e_new = size(trial)
                if e_new < err:
                    z, err = trial, e_new
                    break
                t /= 2
            else:
                break
        if err <= tol:
            return GeoQuad(*(complex(c) for c in z))
    raise SingularError("Newton inverse did not converge")


def geo_pentagon_inverse_newton_pairs(w1, w2):
    return geo_pentagon_inverse_newton(GeoQuad.from_pairs(w1, w2)).pairs()


def _c(p) -> complex:
    return complex(p[0], p[1])


def angle_phase(P, Q, R) -> complex:
    """``exp(2i theta)`` for the interior angle ``theta`` at ``P`` of triangle ``PQR``."""
    z = (_c(R) - _c(P)) / (_c(Q) - _c(P))
    if z.imag < 0:
        z = z.conjugate()
    return z / z.conjugate()


def triangle_angles(P, Q, R) -> tuple[float, float, float]:
    """Interior angles at P, Q, R."""

    def ang(X, Y, Z):
        a, b = _c(Y) - _c(X), _c(Z) - _c(X)
        return abs(math.atan2((b / a).imag, (b / a).real))

    return ang(P, Q, R), ang(Q, R, P), ang(R, P, Q)


def triangle_phases(P, Q, R) -> tuple[complex, complex, complex]:
    return angle_phase(P, Q, R), angle_phase(Q, R, P), angle_phase(R, P, Q)


def _cross(o, a, b) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def quad_angles(A, B, C, D) -> tuple[GeoQuad, GeoQuad]:
    """Doubled-angle phases of both dissections of the convex quadrilateral ABCD."""
    pts = [A, B, C, D]
    turns = [_cross(pts[k], pts[(k + 1) % 4], pts[(k + 2) % 4]) for k in range(4)]
    if not (all(t > AREA_TOL for t in turns) or all(t < -AREA_TOL for t in turns)):
        raise ValueError("quadrilateral must be convex and non-degenerate")
    for tri in ((B, C, D), (B, A, D), (A, B, C), (A, C, D)):
        if abs(_cross(*tri)) / 2 <= AREA_TOL:
            raise ValueError("degenerate triangle in dissection")
    unprimed = GeoQuad(
        u1=angle_phase(B, C, D),
        v1=angle_phase(C, B, D),
        u2=angle_phase(A, B, D),
        v2=angle_phase(B, A, D),
    )
    primed = GeoQuad(
        u1=angle_phase(B, A, C),
        v1=angle_phase(C, A, B),
        u2=angle_phase(A, C, D),
        v2=angle_phase(C, A, D),
    )
    return unprimed, primed


def random_convex_quad(rng, max_tries: int = 1000):
    """Random convex ``A`` (bottom), ``B`` (left), ``C`` (top), ``D`` (right).

    Vertices sit in the four angular sectors around the origin at random
    radii, so the quadrilateral is generically not cyclic.
    """
    centers = {"A": -math.pi / 2, "B": math.pi, "C": math.pi / 2, "D": 0.0}
    for _ in range(max_tries):
        pts = []
        for name in "ABCD":
            th = centers[name] + rng.uniform(-0.6, 0.6)
            r = rng.uniform(0.5, 1.5)
            pts.append((r * math.cos(th), r * math.sin(th)))
        try:
            quad_angles(*pts)
        except ValueError:
            continue
        return tuple(pts)
    raise RuntimeError("could not draw a convex quadrilateral")


def verify_geometric(trials: int = 100, seed: int = 0, tol: float = 1e-9):
    """The map sends measured unprimed phases to measured primed phases."""
    rep = Report(check="geometric-angles", ring="complex", seed=seed)
    for t in range(trials):
        rng = np.random.default_rng([seed, t])
        quad = random_convex_quad(rng)
        unprimed, primed = quad_angles(*quad)
        out = geo_pentagon(unprimed)
        res = max(abs(x - y) for x, y in zip(out.as_tuple(), primed.as_tuple()))
        rep.record(res, res <= tol, trial=t, inputs=quad)
    rep.details["tol"] = tol
    return rep
