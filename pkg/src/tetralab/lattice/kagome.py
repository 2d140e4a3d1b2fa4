"""Periodic kagome state and its evolution step."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ..core.rings import CMat, SingularError, inv
from ..core.weyl import weyl_pair
from ..maps.local import WPair, tetra_map_a
from ..maps.verify import random_phase, small_rational

MAX_CYCLIC_DIM = 512


class EvolutionError(SingularError):
    def __init__(self, site, msg=""):
        self.site = site
        super().__init__(f"singular evolution step at (i, j) = {site}{': ' + msg if msg else ''}")


@dataclass(frozen=True)
class KagomeState:
    """Weyl pairs ``w[alpha, i, j]`` with ``alpha`` in 1..3 and ``i, j`` mod ``N``."""

    N: int
    pairs: dict = field(repr=False)
    ring: str = "rational"
    M: int | None = None

    def __post_init__(self):
        if self.N < 1:
            raise ValueError(f"lattice size must be >= 1, got {self.N}")
        want = {(a, i, j) for a in (1, 2, 3) for i in range(self.N) for j in range(self.N)}
        if set(self.pairs) != want:
            raise ValueError("state must hold exactly one pair per (alpha, i, j)")

    def __getitem__(self, key) -> WPair:
        a, i, j = key
        return self.pairs[(a, i % self.N, j % self.N)]

    def u(self, a, i, j):
        return self[a, i, j].u

    def v(self, a, i, j):
        return self[a, i, j].v

    def sites(self):
        return sorted(self.pairs)

    def replace(self, pairs) -> KagomeState:
        return KagomeState(self.N, pairs, self.ring, self.M)

    def __eq__(self, other):
        if not isinstance(other, KagomeState):
            return NotImplemented
        if (self.N, self.ring, self.M) != (other.N, other.ring, other.M):
            return False
        if self.ring == "rational":
            return self.pairs == other.pairs
        return all(
            np.array_equal(self.pairs[k].u.a, other.pairs[k].u.a)
            and np.array_equal(self.pairs[k].v.a, other.pairs[k].v.a)
            for k in self.pairs
        )

    __hash__ = None


def site_slot(N: int, a: int, i: int, j: int) -> int:
    """Tensor slot of site ``(a, i, j)`` in a cyclic representation."""
    return (a - 1) * N * N + i * N + j


def kagome_from_values(N: int, values: dict) -> KagomeState:
    """Rational state from ``{(a, i, j): (u, v)}``."""
    return KagomeState(N, {k: WPair(Fraction(u), Fraction(v)) for k, (u, v) in values.items()})


def kagome_from_params(N: int, M: int, params: dict) -> KagomeState:
    """Cyclic state from ``{(a, i, j): (x, y)}`` with ``u = x X``, ``v = y Z`` on their own slot."""
    K = 3 * N * N
    if M**K > MAX_CYCLIC_DIM:
        raise ValueError(f"cyclic state dimension {M}^{K} exceeds {MAX_CYCLIC_DIM}")
    pairs = {}
    for (a, i, j), (x, y) in params.items():
        p = weyl_pair(M, x, y, site_slot(N, a, i, j), K)
        pairs[(a, i, j)] = WPair(p.u, p.v)
    return KagomeState(N, pairs, "cyclic", M)


def _regular(s: KagomeState) -> bool:
    try:
        for i in range(s.N):
            for j in range(s.N):
                inv(s.v(1, i, j) + s.u(3, i, j))
                inv(s.u(1, i, j))
                inv(s.v(3, i, j))
    except SingularError:
        return False
    return True


def kagome_random(N: int, ring: str = "rational", seed: int = 0, M: int = 2) -> KagomeState:
    """Generic random state; redraws until every local inverse exists."""
    if N < 1:
        raise ValueError(f"lattice size must be >= 1, got {N}")
    keys = [(a, i, j) for a in (1, 2, 3) for i in range(N) for j in range(N)]
    for redraw in range(100):
        rng = np.random.default_rng([seed, redraw])
        if ring == "rational":
            s = kagome_from_values(N, {k: (small_rational(rng), small_rational(rng)) for k in keys})
        elif ring == "cyclic":
            s = kagome_from_params(N, M, {k: (random_phase(rng), random_phase(rng)) for k in keys})
        else:
            raise ValueError(f"unknown ring {ring!r}")
        if _regular(s):
            return s
    raise SingularError("could not draw a regular state")


def evolve(s: KagomeState, local_map=tetra_map_a) -> KagomeState:
    """One time step: ``w1'`` lands at ``(i+1, j)``, ``w2'`` at ``(i, j)``, ``w3'`` at ``(i, j+1)``.

    Every image is computed from the time-t snapshot.
    """
    N = s.N
    out = {}
    for i in range(N):
        for j in range(N):
            try:
                w1, w2, w3 = local_map(s[1, i, j], s[2, i, j], s[3, i, j])
            except (SingularError, ZeroDivisionError) as exc:
                raise EvolutionError((i, j), str(exc)) from exc
            out[(1, (i + 1) % N, j)] = WPair(*w1)
            out[(2, i, j)] = WPair(*w2)
            out[(3, i, (j + 1) % N)] = WPair(*w3)
    return s.replace(out)


def evolve_steps(s: KagomeState, steps: int, local_map=tetra_map_a) -> list[KagomeState]:
    states = [s]
    for _ in range(steps):
        states.append(evolve(states[-1], local_map))
    return states


def _prod(factors):
    it = iter(factors)
    acc = next(it)
    for f in it:
        acc = acc * f
    return acc


def simple_invariants(s: KagomeState):
    """``U_i = prod_j u2 u3`` and ``V_j = prod_i v1 v2``, factors in ascending index order."""
    N = s.N
    U = [_prod(x for j in range(N) for x in (s.u(2, i, j), s.u(3, i, j))) for i in range(N)]
    V = [_prod(x for i in range(N) for x in (s.v(1, i, j), s.v(2, i, j))) for j in range(N)]
    return U, V


def cubic_coords(i: int, j: int, t: int) -> tuple[int, int, int]:
    return (i, t - i - j, j)


def from_cubic(n) -> tuple[int, int, int]:
    """Inverse of :func:`cubic_coords`: ``(i, j, t)``."""
    n1, n2, n3 = n
    return (n1, n3, n1 + n2 + n3)


def is_cmat_state(s: KagomeState) -> bool:
    return isinstance(s.u(1, 0, 0), CMat)
