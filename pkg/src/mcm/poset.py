"""Points of N x N with the product order, plus square-window helpers."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, NamedTuple


class OutOfWindow(ValueError):
    pass


class Point(NamedTuple):
    """A point (i, j) of N x N, 1-based.

    Tuple comparison (``<``) is lexicographic and only meant for sorting and
    container keys; the product order is :func:`leq`.
    """

    i: int
    j: int


def point(i: int, j: int) -> Point:
    if i < 1 or j < 1:
        raise ValueError(f"coordinates must be positive, got ({i},{j})")
    return Point(i, j)


def leq(p: tuple[int, int], q: tuple[int, int]) -> bool:
    return p[0] <= q[0] and p[1] <= q[1]


def swap(p: tuple[int, int]) -> Point:
    return Point(p[1], p[0])


@dataclass(frozen=True)
class Window:
    """The square [1, bound] x [1, bound]."""

    bound: int

    def __post_init__(self) -> None:
        if self.bound < 1:
            raise ValueError(f"window bound must be >= 1, got {self.bound}")

    def __contains__(self, p: tuple[int, int]) -> bool:
        return 1 <= p[0] <= self.bound and 1 <= p[1] <= self.bound

    def __iter__(self) -> Iterator[Point]:
        return iter_square(self.bound)


def iter_square(bound: int) -> Iterator[Point]:
    for i in range(1, bound + 1):
        for j in range(1, bound + 1):
            yield Point(i, j)


def row_points(n: int, w: Window) -> list[Point]:
    """H^n truncated to the window: all (j, n) with 1 <= j <= bound."""
    if not 1 <= n <= w.bound:
        raise OutOfWindow(f"row {n} outside window of bound {w.bound}")
    return [Point(j, n) for j in range(1, w.bound + 1)]


def col_points(n: int, w: Window) -> list[Point]:
    """V^n truncated to the window: all (n, j) with 1 <= j <= bound."""
    if not 1 <= n <= w.bound:
        raise OutOfWindow(f"column {n} outside window of bound {w.bound}")
    return [Point(n, j) for j in range(1, w.bound + 1)]
