"""Functional-equation and structure-preservation verifiers.

Composition convention: an operator word ``X Y`` acts on a point by applying
``map(X)`` first and ``map(Y)`` second.  So the pentagon relation
``S12 S23 = S23 S13 S12`` is checked as

    apply S12, then S23   ==   apply S23, then S13, then S12.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from ..core.dual import Dual
from ..core.rings import CMat, SingularError, commutator_norm, distance, ring_name
from ..core.weyl import weyl_pair
from ..report import Report
from .local import WPair, pentagon_forward, pentagon_inverse

MAX_REDRAWS = 100
SINGULAR = (SingularError, ZeroDivisionError)

PENTAGON_LHS = ((0, 1), (1, 2))
PENTAGON_RHS = ((1, 2), (0, 2), (0, 1))
TETRA_WIRING = ((0, 1, 2), (0, 3, 4), (1, 3, 5), (2, 4, 5))


@dataclass(frozen=True)
class Sampler:
    """Draws ``n`` random regular Weyl pairs from one ring."""

    ring: str
    draw: Callable
    exact: bool

    def __call__(self, rng, n):
        return self.draw(rng, n)


def small_rational(rng) -> Fraction:
    vals = [k for k in range(-9, 10) if k]
    return Fraction(int(rng.choice(vals)), int(rng.choice(vals)))


def _draw_rational(rng, n):
    return [WPair(small_rational(rng), small_rational(rng)) for _ in range(n)]


def _draw_phase(rng, n):
    return [
        WPair(cmath.exp(1j * rng.uniform(0, 2 * np.pi)), cmath.exp(1j * rng.uniform(0, 2 * np.pi)))
        for _ in range(n)
    ]


def random_phase(rng) -> complex:
    return cmath.exp(1j * rng.uniform(0, 2 * np.pi))


def _draw_cyclic(M):
    def draw(rng, n):
        out = []
        for site in range(n):
            p = weyl_pair(M, random_phase(rng), random_phase(rng), site, n)
            out.append(WPair(p.u, p.v))
        return out

    return draw


RATIONAL = Sampler("rational", _draw_rational, True)
PHASE = Sampler("complex", _draw_phase, False)


def cyclic_sampler(M: int) -> Sampler:
    if M < 2:
        raise ValueError("cyclic representation needs M >= 2")
    return Sampler(f"cyclic(M={M})", _draw_cyclic(M), False)


def trial_rng(seed: int, trial: int, redraw: int = 0):
    return np.random.default_rng([seed, trial, redraw])


def apply_word(point, word, f):
    """Apply ``f`` to the listed index tuples of ``point`` in order.

    ``word`` entries are index tuples, or ``(f_k, idx)`` pairs to mix maps.
    """
    w = list(point)
    for item in word:
        if callable(item[0]):
            g, idx = item
        else:
            g, idx = f, item
        out = g(*(w[i] for i in idx))
        for i, val in zip(idx, out):
            w[i] = WPair(*val)
    return w


def point_distance(a, b) -> float:
    return max(max(distance(x.u, y.u), distance(x.v, y.v)) for x, y in zip(a, b))


def _run(check: str, sampler: Sampler, n_pairs: int, trials: int, seed: int, tol: float, body):
    rep = Report(check=check, ring=sampler.ring, seed=seed)
    singular_trials = 0
    for t in range(trials):
        for r in range(MAX_REDRAWS):
            point = sampler(trial_rng(seed, t, r), n_pairs)
            try:
                res = body(point)
            except SINGULAR:
                rep.skipped += 1
                continue
            ok = res == 0 if sampler.exact else res <= tol
            rep.record(res, ok, trial=t, inputs=[tuple(p) for p in point] if sampler.exact else None)
            break
        else:
            singular_trials += 1
    if trials and singular_trials == trials:
        raise SingularError(f"{check}: every trial hit a singular point")
    rep.details["tol"] = 0 if sampler.exact else tol
    return rep


def verify_pentagon(
    map=pentagon_forward,
    inverse=None,
    trials: int = 50,
    seed: int = 0,
    sampler: Sampler = RATIONAL,
    tol: float = 1e-9,
) -> Report:
    """``S12 S23 = S23 S13 S12`` on three pairs; with ``inverse`` also the round trip."""

    def body(point):
        lhs = apply_word(point, PENTAGON_LHS, map)
        rhs = apply_word(point, PENTAGON_RHS, map)
        res = point_distance(lhs, rhs)
        if inverse is not None:
            back = inverse(*map(point[0], point[1]))
            res = max(res, point_distance(back, point[:2]))
        return res

    return _run("pentagon", sampler, 3, trials, seed, tol, body)


def ten_term_words(map, inverse):
    lhs = [(map, (0, 1)), (inverse, (0, 2)), (map, (0, 3)), (inverse, (1, 3)), (map, (2, 3))]
    rhs = [(inverse, (1, 3)), (map, (2, 3)), (inverse, (0, 3)), (map, (0, 1)), (inverse, (0, 2))]
    return lhs, rhs


def verify_ten_term(
    map=pentagon_forward,
    inverse=pentagon_inverse,
    trials: int = 50,
    seed: int = 0,
    sampler: Sampler = RATIONAL,
    tol: float = 1e-9,
) -> Report:
    """``S12 S13^-1 S14 S24^-1 S34 = S24^-1 S34 S14^-1 S12 S13^-1`` on four pairs."""
    lhs_word, rhs_word = ten_term_words(map, inverse)

    def body(point):
        return point_distance(apply_word(point, lhs_word, None), apply_word(point, rhs_word, None))

    return _run("ten-term", sampler, 4, trials, seed, tol, body)


def verify_tetrahedron(
    map,
    trials: int = 50,
    seed: int = 0,
    sampler: Sampler = RATIONAL,
    tol: float = 1e-9,
    wiring=TETRA_WIRING,
) -> Report:
    """``R123 R145 R246 R356 = R356 R246 R145 R123`` on six pairs."""

    def body(point):
        lhs = apply_word(point, wiring, map)
        rhs = apply_word(point, tuple(reversed(wiring)), map)
        return point_distance(lhs, rhs)

    return _run("tetrahedron", sampler, 6, trials, seed, tol, body)


def canonical_form(n_pairs: int) -> list[list[Fraction]]:
    """Block matrix of ``sum_j dlog u_j ^ dlog v_j`` in coordinates (log u1, log v1, ...)."""
    d = 2 * n_pairs
    om = [[Fraction(0)] * d for _ in range(d)]
    for j in range(n_pairs):
        om[2 * j][2 * j + 1] = Fraction(1)
        om[2 * j + 1][2 * j] = Fraction(-1)
    return om


def log_jacobian(map, point) -> list[list[Fraction]]:
    """Exact Jacobian of ``map`` in logarithmic coordinates at a rational point."""
    xs = [c for p in point for c in (p.u, p.v)]
    n = len(xs)
    duals = [Dual.variable(x, k, n) for k, x in enumerate(xs)]
    pairs = [WPair(duals[2 * j], duals[2 * j + 1]) for j in range(len(point))]
    out = map(*pairs)
    ys = [c for p in out for c in p]
    # d log y_i / d log x_k = (x_k / y_i) dy_i/dx_k
    return [[y.grad[k] * xs[k] / y.val for k in range(n)] for y in ys]


def _symplectic_residual(J, om) -> Fraction:
    n = len(J)
    # J^T om J - om
    oj = [[sum(om[i][k] * J[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    worst = Fraction(0)
    for i in range(n):
        for j in range(n):
            val = sum(J[k][i] * oj[k][j] for k in range(n)) - om[i][j]
            worst = max(worst, abs(val))
    return worst


def infer_omega(pair: WPair) -> complex:
    """``omega`` with ``u v = omega v u`` (least squares over the matrix entries)."""
    uv = pair.u.a @ pair.v.a
    vu = pair.v.a @ pair.u.a
    return complex(np.vdot(vu.ravel(), uv.ravel()) / np.vdot(vu.ravel(), vu.ravel()))


def structure_residual(map, point, omega: complex | None = None):
    """Residual of the canonicity check; a Fraction for rational points."""
    point = [WPair(*p) for p in point]
    first = point[0].u
    if isinstance(first, CMat):
        if omega is None:
            omega = infer_omega(point[0])
        out = [WPair(*p) for p in map(*point)]
        res = 0.0
        for p in out:
            res = max(res, float(np.max(np.abs(p.u.a @ p.v.a - omega * (p.v.a @ p.u.a)))))
        for a in range(len(out)):
            for b in range(a + 1, len(out)):
                for x in out[a]:
                    for y in out[b]:
                        res = max(res, commutator_norm(x, y))
        return res
    if not isinstance(first, Fraction):
        raise TypeError("structure check needs a rational or cyclic point")
    J = log_jacobian(map, point)
    return _symplectic_residual(J, canonical_form(len(point)))


def verify_structure(map, point, omega: complex | None = None, tol: float = 1e-9) -> Report:
    """Check that ``map`` is canonical at ``point``.

    Rational points: the log-coordinate Jacobian satisfies ``J^T Om J = Om``
    exactly.  Cyclic points: every image pair satisfies ``u'v' = omega v'u'``
    and images of different pairs commute, to ``tol``.
    """
    point = [WPair(*p) for p in point]
    rep = Report(check="structure", ring=ring_name(point[0].u))
    res = structure_residual(map, point, omega)
    if isinstance(res, Fraction):
        rep.record(float(res), res == 0, inputs=[tuple(p) for p in point])
    else:
        rep.record(res, res <= tol)
        rep.details["tol"] = tol
    return rep


def verify_structure_random(map, n_pairs: int, trials: int, seed: int, sampler: Sampler = RATIONAL, tol=1e-9):
    return _run("structure", sampler, n_pairs, trials, seed, tol, lambda pt: structure_residual(map, pt))
