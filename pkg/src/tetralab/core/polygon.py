"""Newton polygon of the spectral polynomials."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class NewtonPolygon:
    """Integer points with ``-N <= a``, ``-N <= b`` and ``-N <= a + b <= 0``."""

    N: int
    points: frozenset = field(repr=False)

    @property
    def marked(self) -> tuple[int, int]:
        """The normalized corner, coefficient fixed to 1."""
        return (-self.N, 0)

    def __contains__(self, p) -> bool:
        return tuple(p) in self.points

    def __len__(self):
        return len(self.points)

    @property
    def left(self) -> list[tuple[int, int]]:
        return [(-self.N, b) for b in range(0, self.N + 1)]

    @property
    def bottom(self) -> list[tuple[int, int]]:
        return [(a, -self.N) for a in range(0, self.N + 1)]

    @property
    def left_bottom(self) -> list[tuple[int, int]]:
        return [(a, -self.N - a) for a in range(-self.N, 1)]

    @property
    def hypotenuse(self) -> list[tuple[int, int]]:
        return [(a, -a) for a in range(-self.N, self.N + 1)]

    @property
    def boundary(self) -> set[tuple[int, int]]:
        return set(self.left) | set(self.bottom) | set(self.left_bottom) | set(self.hypotenuse)

    @property
    def interior(self) -> set[tuple[int, int]]:
        return set(self.points) - self.boundary


def polygon_points(N: int) -> NewtonPolygon:
    if N < 1:
        raise ValueError(f"lattice size must be >= 1, got {N}")
    pts = frozenset(
        (a, b)
        for a in range(-N, N + 1)
        for b in range(-N, N + 1)
        if -N <= a + b <= 0
    )
    return NewtonPolygon(N, pts)
