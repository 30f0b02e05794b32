"""Brute-force ground truth built on raw point maps over finite windows.

Nothing here relies on the tail-shift representation beyond evaluating an
element pointwise, so a representation bug cannot hide in the checks.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product
from typing import Iterator, Mapping, Optional

import numpy as np

from .element import (
    INJECTIVITY,
    MONOTONICITY,
    Element,
    PlusPart,
    ValidationReport,
    Violation,
    apply,
    validate,
)
from .errors import GenerationExhausted, InternalError
from .poset import Point

Pt = tuple[int, int]


@dataclass(frozen=True, eq=False)
class WindowedPartialMap:
    """A finite partial map with arguments in ``[1, window]^2``.

    Injectivity is not enforced here so that :func:`bf_check` can report it.
    """

    window: int
    entries: Mapping[Pt, Pt]

    def __post_init__(self) -> None:
        if self.window < 1:
            raise ValueError("window must be positive")
        clean = {}
        for x, y in dict(self.entries).items():
            x = (int(x[0]), int(x[1]))
            if not (1 <= x[0] <= self.window and 1 <= x[1] <= self.window):
                raise ValueError(f"argument {x} outside window {self.window}")
            clean[x] = (int(y[0]), int(y[1]))
        object.__setattr__(self, "entries", clean)

    @classmethod
    def _trusted(cls, window: int, entries: dict) -> "WindowedPartialMap":
        # internal fast path: entries already keyed by in-window int tuples
        m = object.__new__(cls)
        object.__setattr__(m, "window", window)
        object.__setattr__(m, "entries", entries)
        return m

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WindowedPartialMap):
            return NotImplemented
        return self.window == other.window and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.window, tuple(sorted(self.entries.items()))))

    def get(self, x: Pt) -> Optional[Pt]:
        return self.entries.get((x[0], x[1]))

    def restricted(self, window: int) -> "WindowedPartialMap":
        return WindowedPartialMap(
            window, {x: y for x, y in self.entries.items() if x[0] <= window and x[1] <= window}
        )

    def to_rows(self) -> list[list[int]]:
        return [[x[0], x[1], y[0], y[1]] for x, y in sorted(self.entries.items())]


def truncate(alpha: Element, window: int) -> WindowedPartialMap:
    entries = {}
    for i in range(1, window + 1):
        for j in range(1, window + 1):
            y = apply(alpha, (i, j))
            if y is not None:
                entries[(i, j)] = (y[0], y[1])
    return WindowedPartialMap._trusted(window, entries)


def bf_check(m: WindowedPartialMap) -> ValidationReport:
    """Exhaustive injectivity and monotonicity over every pair of arguments."""
    items = sorted(m.entries.items())
    seen: dict[Pt, Pt] = {}
    for x, y in items:
        if y in seen:
            return ValidationReport(
                Violation(INJECTIVITY, (Point(*seen[y]), Point(*x)), f"both map to {y}")
            )
        seen[y] = x
    if len(items) < 2:
        return ValidationReport()
    flat = np.array([x + y for x, y in items], dtype=np.int64)
    xs, ys = flat[:, :2], flat[:, 2:]
    below = (xs[:, None, 0] <= xs[None, :, 0]) & (xs[:, None, 1] <= xs[None, :, 1])
    img_below = (ys[:, None, 0] <= ys[None, :, 0]) & (ys[:, None, 1] <= ys[None, :, 1])
    bad = np.argwhere(below & ~img_below)
    if len(bad):
        a, b = (int(t) for t in bad[0])
        p, q = items[a][0], items[b][0]
        return ValidationReport(
            Violation(MONOTONICITY, (Point(*p), Point(*q)), f"{items[a][1]} not <= {items[b][1]}")
        )
    return ValidationReport()


def bf_compose(m1: WindowedPartialMap, m2: WindowedPartialMap) -> WindowedPartialMap:
    """Pointwise m1 then m2; arguments whose intermediate m2 does not know are dropped."""
    out = {}
    for x, y in m1.entries.items():
        z = m2.entries.get(y)
        if z is not None:
            out[x] = z
    return WindowedPartialMap._trusted(m1.window, out)


# -- generation --------------------------------------------------------------


def _nonincreasing(length: int, top: int) -> Iterator[tuple[int, ...]]:
    def rec(prefix: tuple[int, ...], cap: int) -> Iterator[tuple[int, ...]]:
        if len(prefix) == length:
            yield prefix
            return
        for s in range(cap, -1, -1):
            yield from rec(prefix + (s,), s)

    yield from rec((), top)


def _tail_layout(B: int, P: tuple[int, ...], Q: tuple[int, ...]):
    """Window points hit by tails, or None if two tails collide."""
    taken: set[Pt] = set()
    for j, s in enumerate(P, start=1):
        for i in range(B + 1 - s, B + 1):
            taken.add((i, j))
    for i, s in enumerate(Q, start=1):
        for j in range(B + 1 - s, B + 1):
            if (i, j) in taken:
                return None
            taken.add((i, j))
    return taken


def _fill_order(B: int) -> list[Pt]:
    # every point strictly above x is visited before x
    pts = [(i, j) for i in range(1, B + 1) for j in range(1, B + 1)]
    pts.sort(key=lambda p: (-(p[0] + p[1]), -p[0]))
    return pts


def _upper_bound(x: Pt, B: int, P, Q, assigned: dict[Pt, Optional[Pt]]) -> Pt:
    i, j = x
    # tails above x: (B+1, j) -> (B+1-P_j, j) and (i, B+1) -> (i, B+1-Q_i)
    u1 = min(i, B + 1 - P[j - 1])
    u2 = min(j, B + 1 - Q[i - 1])
    for (a, b), y in assigned.items():
        if y is not None and a >= i and b >= j and (a, b) != x:
            u1 = min(u1, y[0])
            u2 = min(u2, y[1])
    return u1, u2


def _explicit_maps(B: int, P, Q) -> Iterator[dict[Pt, Pt]]:
    taken = _tail_layout(B, P, Q)
    if taken is None:
        return
    order = _fill_order(B)
    assigned: dict[Pt, Optional[Pt]] = {}
    used = set(taken)

    def rec(k: int) -> Iterator[dict[Pt, Pt]]:
        if k == len(order):
            yield {x: y for x, y in assigned.items() if y is not None}
            return
        x = order[k]
        u1, u2 = _upper_bound(x, B, P, Q, assigned)
        assigned[x] = None
        yield from rec(k + 1)
        for a in range(1, min(u1, B) + 1):
            for b in range(1, min(u2, B) + 1):
                if (a, b) in used:
                    continue
                used.add((a, b))
                assigned[x] = (a, b)
                yield from rec(k + 1)
                used.discard((a, b))
        del assigned[x]

    yield from rec(0)


def enumerate_elements(max_window: int, max_shift: int) -> Iterator[Element]:
    """Every element with window <= max_window and shifts <= max_shift, once each."""
    seen = set()
    for B in range(1, max_window + 1):
        top = min(max_shift, B)
        for P in _nonincreasing(B, top):
            for Q in _nonincreasing(B, top):
                for explicit in _explicit_maps(B, P, Q):
                    plus = PlusPart(B, explicit, P, Q)
                    report = validate(plus)
                    if not report:
                        raise InternalError(f"enumerator produced an invalid map: {report}")
                    for g in (0, 1):
                        e = Element(plus, g)
                        if e.key not in seen:
                            seen.add(e.key)
                            yield e


@dataclass(frozen=True)
class RandomParams:
    max_window: int = 6
    max_shift: int = 2
    hole_budget: int = 3
    allow_swap: bool = True


def _random_shifts(rng: random.Random, B: int, top: int) -> tuple[int, ...]:
    vals = sorted((rng.randint(0, top) for _ in range(B)), reverse=True)
    # favour short supports so tails are not always dense
    cut = rng.randint(0, B)
    return tuple(v if k < cut else 0 for k, v in enumerate(vals))


def random_plus(rng: random.Random, params: RandomParams, max_tries: int = 500) -> PlusPart:
    for _ in range(max_tries):
        B = rng.randint(1, params.max_window)
        top = min(params.max_shift, B)
        P = _random_shifts(rng, B, top)
        Q = _random_shifts(rng, B, top)
        taken = _tail_layout(B, P, Q)
        if taken is None:
            continue
        used = set(taken)
        holes_left = rng.randint(0, params.hole_budget)
        hole_rate = holes_left / (B * B)
        assigned: dict[Pt, Optional[Pt]] = {}
        ok = True
        for x in _fill_order(B):
            u1, u2 = _upper_bound(x, B, P, Q, assigned)
            u1, u2 = min(u1, B), min(u2, B)
            if holes_left and rng.random() < hole_rate:
                assigned[x] = None
                holes_left -= 1
                continue
            if (u1, u2) not in used and rng.random() < 0.75:
                y = (u1, u2)
            else:
                cands = [
                    (a, b)
                    for a in range(1, u1 + 1)
                    for b in range(1, u2 + 1)
                    if (a, b) not in used
                ]
                if not cands:
                    if not holes_left:
                        ok = False
                        break
                    assigned[x] = None
                    holes_left -= 1
                    continue
                y = rng.choice(cands)
            used.add(y)
            assigned[x] = y
        if not ok:
            continue
        plus = PlusPart(B, {x: y for x, y in assigned.items() if y is not None}, P, Q)
        report = validate(plus)
        if not report:
            raise InternalError(f"generator produced an invalid map: {report}")
        return plus
    raise GenerationExhausted(f"no valid element after {max_tries} attempts")


def random_element(seed, params: Optional[RandomParams] = None, **overrides) -> Element:
    """Seed-deterministic random element; keyword overrides adjust ``params``."""
    params = params or RandomParams()
    if overrides:
        params = RandomParams(**{**params.__dict__, **overrides})
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    plus = random_plus(rng, params)
    g = rng.randint(0, 1) if params.allow_swap else 0
    return Element(plus, g)


def random_window_subset(rng: random.Random, bound: int, size: int) -> set[Pt]:
    pts = list(product(range(1, bound + 1), repeat=2))
    return set(rng.sample(pts, min(size, len(pts))))


# -- brute-force equation solving -------------------------------------------


def _bf_extend(window: int, forced: dict[Pt, Optional[Pt]], free: list[Pt], allowed: list[Pt]):
    """Every assignment of free points (hole or an allowed image) keeping the map valid."""
    base = {x: y for x, y in forced.items() if y is not None}
    if not bf_check(WindowedPartialMap._trusted(window, base)):
        return
    cand = np.array(allowed, dtype=np.int64).reshape(-1, 2)
    results = []

    def rec(k: int, current: dict[Pt, Pt]) -> None:
        if k == len(free):
            results.append(frozenset(current.items()))
            return
        f = free[k]
        rec(k + 1, current)
        if not len(cand):
            return
        xs = np.array(list(current.keys()), dtype=np.int64).reshape(-1, 2)
        ys = np.array(list(current.values()), dtype=np.int64).reshape(-1, 2)
        ok = np.ones(len(cand), dtype=bool)
        if len(xs):
            above = (xs[:, 0] >= f[0]) & (xs[:, 1] >= f[1])
            below = (xs[:, 0] <= f[0]) & (xs[:, 1] <= f[1])
            for y in ys[above]:
                ok &= (cand[:, 0] <= y[0]) & (cand[:, 1] <= y[1])
            for y in ys[below]:
                ok &= (cand[:, 0] >= y[0]) & (cand[:, 1] >= y[1])
            taken = set(current.values())
            ok &= np.array([tuple(z) not in taken for z in cand.tolist()])
        for z in cand[ok].tolist():
            current[f] = (z[0], z[1])
            rec(k + 1, current)
            del current[f]

    rec(0, dict(base))
    for r in results:
        if not bf_check(WindowedPartialMap._trusted(window, dict(r))):
            raise InternalError("incremental pruning admitted an invalid map")
    yield from results


def bf_solve_right(ta: WindowedPartialMap, tb: WindowedPartialMap, window: int) -> set[frozenset]:
    """Truncations to ``window`` of all chi with alpha*chi == beta, from raw truncations.

    ``ta`` and ``tb`` must be large enough that every preimage of a point of
    the window is visible.
    """
    pts = [(i, j) for i in range(1, window + 1) for j in range(1, window + 1)]
    for x in product(range(1, ta.window + 1), repeat=2):
        if x not in ta.entries and x in tb.entries:
            return set()
    forced: dict[Pt, Optional[Pt]] = {}
    for x, y in ta.entries.items():
        if y[0] <= window and y[1] <= window:
            forced[y] = tb.entries.get(x)
    free = [p for p in pts if p not in forced]
    return set(_bf_extend(window, forced, free, pts))


def bf_solve_left(ta: WindowedPartialMap, tb: WindowedPartialMap, window: int) -> set[frozenset]:
    """Truncations to ``window`` of all chi with chi*alpha == beta."""
    pts = [(i, j) for i in range(1, window + 1) for j in range(1, window + 1)]
    inv = {y: x for x, y in ta.entries.items()}
    forced: dict[Pt, Optional[Pt]] = {}
    free = []
    for x in pts:
        y = tb.entries.get(x)
        if y is None:
            free.append(x)
            continue
        if y not in inv:
            return set()
        forced[x] = inv[y]
    outside_dom = [p for p in pts if p not in ta.entries]
    return set(_bf_extend(window, forced, free, outside_dom))
