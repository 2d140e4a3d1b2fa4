"""Tau functions on a box of the cubic lattice.

Each tau field obeys the bilinear recursion

    tau(n) tau(n+e1+e2+e3) = tau(n+e1) tau(n+e2+e3) + tau(n+e3) tau(n+e1+e2),

and two such fields give the Weyl-pair variables through ratios (the
Legendre substitution), after which the lattice equations of motion hold
identically.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ..core.rings import SingularError
from ..maps.verify import small_rational
from ..report import Report

E1, E2, E3 = (1, 0, 0), (0, 1, 0), (0, 0, 1)


def add(*vs):
    return tuple(sum(c) for c in zip(*vs))


class TauError(SingularError):
    def __init__(self, point, msg):
        self.point = point
        super().__init__(f"{msg} at n = {point}")


class StencilError(KeyError):
    pass


@dataclass(frozen=True)
class TauField:
    """Rational tau values on (part of) the box ``[0, B1) x [0, B2) x [0, B3)``."""

    block: tuple
    values: dict = field(repr=False)

    def __post_init__(self):
        for n, val in self.values.items():
            if not all(0 <= c < b for c, b in zip(n, self.block)):
                raise ValueError(f"point {n} outside block {self.block}")
            if val == 0:
                raise TauError(n, "zero tau value")

    def __getitem__(self, n):
        try:
            return self.values[tuple(n)]
        except KeyError:
            raise StencilError(f"tau not available at {tuple(n)}") from None

    def __contains__(self, n):
        return tuple(n) in self.values

    def points(self):
        return itertools.product(*(range(b) for b in self.block))


def wall_points(block):
    return [n for n in itertools.product(*(range(b) for b in block)) if min(n) == 0]


def unit_tau_init(block) -> TauField:
    return TauField(tuple(block), {n: Fraction(1) for n in wall_points(block)})


def random_tau_init(block, seed: int, positive: bool = True) -> TauField:
    """Random wall data; positive values keep every propagated tau positive."""
    rng = np.random.default_rng([seed, 7])
    vals = {}
    for n in wall_points(block):
        x = small_rational(rng)
        vals[n] = abs(x) if positive else x
    return TauField(tuple(block), vals)


def cube_residual(tau: TauField, n):
    n = tuple(n)
    return tau[n] * tau[add(n, E1, E2, E3)] - (
        tau[add(n, E1)] * tau[add(n, E2, E3)] + tau[add(n, E3)] * tau[add(n, E1, E2)]
    )


def hirota_propagate(init: TauField) -> TauField:
    """Fill the box from data on the walls ``min(n) = 0``.

    Points are visited by increasing ``n1 + n2 + n3``; each is the top corner
    of a unit cube whose other seven corners are already known.
    """
    block = init.block
    missing = [n for n in wall_points(block) if n not in init.values]
    if missing:
        raise ValueError(f"initial data missing on wall points, e.g. {missing[0]}")
    vals = dict(init.values)
    interior = sorted(
        (n for n in itertools.product(*(range(b) for b in block)) if min(n) >= 1),
        key=lambda n: (sum(n), n),
    )
    for m in interior:
        n = add(m, (-1, -1, -1))
        base = vals[n]
        if base == 0:
            raise TauError(n, "zero tau in denominator")
        top = (vals[add(n, E1)] * vals[add(n, E2, E3)] + vals[add(n, E3)] * vals[add(n, E1, E2)]) / base
        if top == 0:
            raise TauError(m, "degenerate tau (zero produced)")
        vals[m] = top
    return TauField(block, vals)


def legendre_uv(tau1: TauField, tau2: TauField, n):
    """``(u1, v1, u2, v2, u3, v3)`` at ``n`` from the two tau fields."""
    n = tuple(n)
    t1 = lambda *e: tau1[add(n, *e)]  # noqa: E731
    t2 = lambda *e: tau2[add(n, *e)]  # noqa: E731
    u1 = (t1() / t1(E3)) * (t2(E2, E3) / t2(E2))
    v1 = (t1(E2, E3) / t1(E3)) * (t2() / t2(E2))
    u2 = (t1(E1) / t1(E1, E3)) * (t2(E3) / t2())
    v2 = (t1(E3) / t1(E1, E3)) * (t2(E1) / t2())
    u3 = (t1(E1, E2) / t1(E1)) * (t2() / t2(E2))
    v3 = (t1() / t1(E1)) * (t2(E1, E2) / t2(E2))
    return (u1, v1, u2, v2, u3, v3)


def eom_images(w):
    """Right-hand sides of the lattice equations of motion at a site.

    Returns ``{(k, name): value}`` for the variable that lands at ``n + e_k``.
    """
    u1, v1, u2, v2, u3, v3 = w
    s = v1 + u3
    return {
        (1, "u1"): (u2 * v3 + u1 * v2) / v3,
        (1, "v1"): v2 * s / v3,
        (2, "u2"): u1 * u3 / s,
        (2, "v2"): v1 * v3 / s,
        (3, "u3"): u2 * s / u1,
        (3, "v3"): (u2 * v3 + u1 * v2) / u1,
    }


_NAMES = ("u1", "v1", "u2", "v2", "u3", "v3")
_SHIFT = {1: E1, 2: E2, 3: E3}


def verify_hirota_to_eom(tau1: TauField, tau2: TauField, block=None) -> Report:
    """Check both bilinear recursions and every equation of motion that fits in the box."""
    block = tuple(block or tau1.block)
    rep = Report(check="hirota-eom", ring="rational")
    for name, tau in (("tau1", tau1), ("tau2", tau2)):
        for n in itertools.product(*(range(b - 1) for b in block)):
            try:
                r = cube_residual(tau, n)
            except StencilError:
                continue
            rep.record(float(abs(r)), r == 0, inputs={"field": name, "n": n}, note="hirota")
    sites = {}
    for n in itertools.product(*(range(b) for b in block)):
        try:
            sites[n] = legendre_uv(tau1, tau2, n)
        except StencilError:
            continue
    for n, w in sites.items():
        for (k, var), rhs in eom_images(w).items():
            m = add(n, _SHIFT[k])
            if m not in sites:
                continue
            lhs = sites[m][_NAMES.index(var)]
            r = lhs - rhs
            rep.record(float(abs(r)), r == 0, inputs={"n": n, "var": var}, note="eom")
    rep.details["eom_sites"] = len(sites)
    return rep
