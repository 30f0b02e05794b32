"""Finite representation of monotone injective cofinite partial selfmaps of N x N.

An orientation-preserving map is stored as a :class:`PlusPart`: an explicit
partial map on the window ``[1,B]^2`` plus eventual shifts.  Outside the
window the map is forced::

    i > B, j <= B:   (i, j) -> (i - P_j, j)      row tails
    i <= B, j > B:   (i, j) -> (i, j - Q_i)      column tails
    i > B, j > B:    (i, j) -> (i, j)            fixed quadrant

A general :class:`Element` is a plus part followed by the swap
``(i, j) -> (j, i)`` when its orientation bit ``g`` is 1.  Maps act on the
right, so ``compose(a, b)`` applies ``a`` first.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Optional

from .errors import ConsistencyError, InternalError, InvalidElement
from .poset import Point, leq

Pt = tuple[int, int]

INJECTIVITY = "InjectivityCollision"
MONOTONICITY = "MonotonicityViolation"
SHIFT_NOT_MONOTONE = "ShiftVectorNotMonotone"
TAIL_UNDERFLOW = "TailUnderflow"


@dataclass(frozen=True)
class Violation:
    kind: str
    points: tuple[Point, ...] = ()
    detail: str = ""

    def __str__(self) -> str:
        pts = ", ".join(f"({p[0]},{p[1]})" for p in self.points)
        text = f"{self.kind}({pts})"
        return f"{text}: {self.detail}" if self.detail else text


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of a membership check; carries the first violation found."""

    violation: Optional[Violation] = None

    @property
    def ok(self) -> bool:
        return self.violation is None

    @property
    def kind(self) -> Optional[str]:
        return None if self.violation is None else self.violation.kind

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        return "valid" if self.ok else str(self.violation)


@dataclass(frozen=True, eq=False)
class PlusPart:
    """Orientation-preserving part: window map plus row/column tail shifts.

    Window points missing from ``explicit`` are domain holes.  Construction
    only checks structure; use :func:`validate` for membership.
    """

    bound: int
    explicit: Mapping[Pt, Pt]
    row_shifts: tuple[int, ...]
    col_shifts: tuple[int, ...]

    def __post_init__(self) -> None:
        B = self.bound
        if not isinstance(B, int) or B < 1:
            raise ValueError(f"window bound must be a positive integer, got {B!r}")
        rows = tuple(int(s) for s in self.row_shifts)
        cols = tuple(int(s) for s in self.col_shifts)
        if len(rows) != B or len(cols) != B:
            raise ValueError(
                f"shift vectors must have length {B}, got {len(rows)} and {len(cols)}"
            )
        explicit = {}
        for x, y in dict(self.explicit).items():
            x = (int(x[0]), int(x[1]))
            y = (int(y[0]), int(y[1]))
            if not (1 <= x[0] <= B and 1 <= x[1] <= B):
                raise ValueError(f"explicit argument {x} outside window {B}")
            if y[0] < 1 or y[1] < 1:
                raise ValueError(f"explicit image {y} is not a point of N x N")
            explicit[x] = y
        object.__setattr__(self, "explicit", explicit)
        object.__setattr__(self, "row_shifts", rows)
        object.__setattr__(self, "col_shifts", cols)

    @property
    def max_shift(self) -> int:
        return max(max(self.row_shifts), max(self.col_shifts), 0)

    def eval(self, i: int, j: int) -> Optional[Pt]:
        B = self.bound
        if i <= B:
            if j <= B:
                return self.explicit.get((i, j))
            return (i, j - self.col_shifts[i - 1])
        if j <= B:
            return (i - self.row_shifts[j - 1], j)
        return (i, j)

    def __repr__(self) -> str:
        return (
            f"PlusPart(bound={self.bound}, explicit={len(self.explicit)} pts, "
            f"row_shifts={self.row_shifts}, col_shifts={self.col_shifts})"
        )


def _suffix_minima(f: dict[Pt, Pt], L: int):
    inf = 1 << 60
    s1 = [[inf] * (L + 2) for _ in range(L + 2)]
    s2 = [[inf] * (L + 2) for _ in range(L + 2)]
    for i in range(L, 0, -1):
        r1, r1n, r2, r2n = s1[i], s1[i + 1], s2[i], s2[i + 1]
        for j in range(L, 0, -1):
            a = min(r1n[j], r1[j + 1])
            b = min(r2n[j], r2[j + 1])
            y = f.get((i, j))
            if y is not None:
                a = min(a, y[0])
                b = min(b, y[1])
            r1[j] = a
            r2[j] = b
    return s1, s2


def _first_monotonicity_violation(f: dict[Pt, Pt], L: int) -> Optional[tuple[Pt, Pt]]:
    # strict-upset minima: x is fine iff f(x) is below every image strictly above it
    s1, s2 = _suffix_minima(f, L)
    for i in range(1, L + 1):
        for j in range(1, L + 1):
            y = f.get((i, j))
            if y is None:
                continue
            up1 = min(s1[i + 1][j], s1[i][j + 1])
            up2 = min(s2[i + 1][j], s2[i][j + 1])
            if y[0] <= up1 and y[1] <= up2:
                continue
            for k in range(i, L + 1):
                for m in range(j, L + 1):
                    z = f.get((k, m))
                    if z is not None and (k, m) != (i, j) and not leq(y, z):
                        return (i, j), (k, m)
    return None


def validate(candidate: PlusPart) -> ValidationReport:
    """Decide whether ``candidate`` is injective and monotone on all of N x N.

    Non-increasing non-negative shifts make the tail regions monotone among
    themselves.  Every remaining monotonicity violation can be slid, along a
    tail, into ``[1, B+1]^2``; once monotone, explicit images lie in
    ``[1, B+1]^2`` and every possible collision has both preimages inside
    ``[1, B+M+1]^2``.  Checking that square exhaustively is therefore exact.
    """
    B = candidate.bound
    for name, vec in (("row", candidate.row_shifts), ("col", candidate.col_shifts)):
        for k, s in enumerate(vec):
            if s < 0 or (k and s > vec[k - 1]):
                return ValidationReport(
                    Violation(SHIFT_NOT_MONOTONE, (), f"{name} shifts {list(vec)} at index {k + 1}")
                )
    for k, s in enumerate(candidate.row_shifts):
        if s > B:
            return ValidationReport(
                Violation(TAIL_UNDERFLOW, (Point(B + 1, k + 1),), f"row shift {s} > window {B}")
            )
    for k, s in enumerate(candidate.col_shifts):
        if s > B:
            return ValidationReport(
                Violation(TAIL_UNDERFLOW, (Point(k + 1, B + 1),), f"column shift {s} > window {B}")
            )
    L = B + candidate.max_shift + 1
    f: dict[Pt, Pt] = {}
    seen: dict[Pt, Pt] = {}
    ev = candidate.eval
    for i in range(1, L + 1):
        for j in range(1, L + 1):
            y = ev(i, j)
            if y is None:
                continue
            if y in seen:
                return ValidationReport(
                    Violation(INJECTIVITY, (Point(*seen[y]), Point(i, j)), f"both map to {y}")
                )
            seen[y] = (i, j)
            f[(i, j)] = y
    bad = _first_monotonicity_violation(f, L)
    if bad is not None:
        p, q = bad
        return ValidationReport(
            Violation(MONOTONICITY, (Point(*p), Point(*q)), f"{f[p]} not <= {f[q]}")
        )
    return ValidationReport()


# -- plus-part algebra -------------------------------------------------------


def conj_plus(p: PlusPart) -> PlusPart:
    """The plus part of swap . p . swap: mirror everything across the diagonal."""
    return PlusPart(
        p.bound,
        {(x[1], x[0]): (y[1], y[0]) for x, y in p.explicit.items()},
        p.col_shifts,
        p.row_shifts,
    )


def expand_plus(p: PlusPart, bound: int) -> PlusPart:
    if bound <= p.bound:
        return p
    ev = p.eval
    explicit = {}
    for i in range(1, bound + 1):
        for j in range(1, bound + 1):
            y = ev(i, j)
            if y is not None:
                explicit[(i, j)] = y
    pad = (0,) * (bound - p.bound)
    return PlusPart(bound, explicit, p.row_shifts + pad, p.col_shifts + pad)


def normalize_plus(p: PlusPart) -> PlusPart:
    B = p.bound
    ex = p.explicit
    P, Q = p.row_shifts, p.col_shifts
    b = B
    while b > 1:
        if P[b - 1] or Q[b - 1] or ex.get((b, b)) != (b, b):
            break
        if any(ex.get((b, j)) != (b - P[j - 1], j) for j in range(1, b)):
            break
        if any(ex.get((i, b)) != (i, b - Q[i - 1]) for i in range(1, b)):
            break
        b -= 1
    if b == B:
        return p
    explicit = {x: y for x, y in ex.items() if x[0] <= b and x[1] <= b}
    return PlusPart(b, explicit, P[:b], Q[:b])


def _is_identity_plus(p: PlusPart) -> bool:
    return p.bound == 1 and p.explicit == {(1, 1): (1, 1)} and p.row_shifts == (0,) == p.col_shifts


def compose_plus(p1: PlusPart, p2: PlusPart) -> PlusPart:
    if _is_identity_plus(p2):
        return normalize_plus(p1)
    if _is_identity_plus(p1):
        return normalize_plus(p2)
    # With B'' = max(B1, B2) + M1 + 1, a row-tail point of the result (i > B'')
    # leaves p1 with first coordinate > max(B1, B2), hence sits in a tail or the
    # fixed quadrant of p2: the result's tails are sums of the padded shifts.
    b = max(p1.bound, p2.bound) + p1.max_shift + 1
    e1, e2 = p1.eval, p2.eval
    explicit = {}
    for i in range(1, b + 1):
        for j in range(1, b + 1):
            y = e1(i, j)
            if y is not None:
                z = e2(y[0], y[1])
                if z is not None:
                    explicit[(i, j)] = z

    def padded(v: tuple[int, ...]) -> list[int]:
        return list(v) + [0] * (b - len(v))

    rows = [a + c for a, c in zip(padded(p1.row_shifts), padded(p2.row_shifts))]
    cols = [a + c for a, c in zip(padded(p1.col_shifts), padded(p2.col_shifts))]
    return normalize_plus(PlusPart(b, explicit, tuple(rows), tuple(cols)))


# -- elements ---------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Element:
    """``plus`` followed by the coordinate swap when ``g == 1``."""

    plus: PlusPart
    g: int = 0

    def __post_init__(self) -> None:
        if self.g not in (0, 1):
            raise ValueError(f"orientation bit must be 0 or 1, got {self.g!r}")

    @cached_property
    def normal(self) -> "Element":
        p = normalize_plus(self.plus)
        return self if p is self.plus else Element(p, self.g)

    @cached_property
    def key(self) -> tuple:
        p = self.normal.plus
        return (self.g, p.bound, p.row_shifts, p.col_shifts, tuple(sorted(p.explicit.items())))

    @property
    def bound(self) -> int:
        return self.plus.bound

    def __call__(self, x: Pt) -> Optional[Point]:
        return apply(self, x)

    def __mul__(self, other: "Element") -> "Element":
        return compose(self, other)

    def __pow__(self, k: int) -> "Element":
        return power(self, k)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        p = self.normal.plus
        return f"Element(B={p.bound}, P={p.row_shifts}, Q={p.col_shifts}, g={self.g}, explicit={dict(sorted(p.explicit.items()))})"


def make_element(
    bound: int,
    explicit: Mapping[Pt, Pt],
    row_shifts: Iterable[int],
    col_shifts: Iterable[int],
    g: int = 0,
) -> Element:
    """Build and validate an element; raises :class:`InvalidElement`."""
    plus = PlusPart(bound, explicit, tuple(row_shifts), tuple(col_shifts))
    report = validate(plus)
    if not report:
        raise InvalidElement(report)
    return Element(plus, g)


def apply(alpha: Element, x: Pt) -> Optional[Point]:
    y = alpha.plus.eval(x[0], x[1])
    if y is None:
        return None
    return Point(y[1], y[0]) if alpha.g else Point(y[0], y[1])


def compose(alpha: Element, beta: Element) -> Element:
    """alpha then beta; (p1, g1)(p2, g2) = (p1 . h^g1(p2), g1 + g2)."""
    p2 = conj_plus(beta.plus) if alpha.g else beta.plus
    return Element(compose_plus(alpha.plus, p2), alpha.g ^ beta.g)


def compose_all(elements: Iterable[Element]) -> Element:
    out = mk_identity()
    for e in elements:
        out = compose(out, e)
    return out


def power(alpha: Element, k: int) -> Element:
    if k < 0:
        raise ValueError("negative powers are not defined")
    out, base = mk_identity(), alpha
    while k:
        if k & 1:
            out = compose(out, base)
        k >>= 1
        if k:
            base = compose(base, base)
    return out


def equals(alpha: Element, beta: Element) -> bool:
    return alpha.key == beta.key


def normalize(alpha: Element) -> Element:
    return alpha.normal


# -- constructors -----------------------------------------------------------


def mk_identity() -> Element:
    return Element(PlusPart(1, {(1, 1): (1, 1)}, (0,), (0,)), 0)


def mk_swap() -> Element:
    return Element(PlusPart(1, {(1, 1): (1, 1)}, (0,), (0,)), 1)


def _gamma_plus(n: int) -> PlusPart:
    if n < 1:
        raise ValueError(f"generator index must be >= 1, got {n}")
    explicit = {(i, j): (i - 1, j) for i in range(2, n + 1) for j in range(1, n + 1)}
    return PlusPart(n, explicit, (1,) * n, (0,) * n)


def mk_gamma(n: int) -> Element:
    """gamma_n: rows 1..n shift left by one; (1, j), j <= n, are holes."""
    return Element(_gamma_plus(n), 0)


def mk_upsilon(n: int) -> Element:
    """upsilon_n: columns 1..n shift down by one; (i, 1), i <= n, are holes."""
    return Element(conj_plus(_gamma_plus(n)), 0)


def mk_partial_identity(holes: Iterable[Pt] = ()) -> Element:
    holes = {(int(h[0]), int(h[1])) for h in holes}
    B = max((max(h) for h in holes), default=1)
    explicit = {(i, j): (i, j) for i in range(1, B + 1) for j in range(1, B + 1) if (i, j) not in holes}
    return Element(PlusPart(B, explicit, (0,) * B, (0,) * B), 0)


# -- structure --------------------------------------------------------------


def is_idempotent(alpha: Element) -> bool:
    p = alpha.plus
    return (
        alpha.g == 0
        and not any(p.row_shifts)
        and not any(p.col_shifts)
        and all(x == y for x, y in p.explicit.items())
    )


def domain_complement(alpha: Element) -> frozenset[Point]:
    p = alpha.plus
    B = p.bound
    return frozenset(
        Point(i, j) for i in range(1, B + 1) for j in range(1, B + 1) if (i, j) not in p.explicit
    )


def _plus_range_complement(p: PlusPart) -> set[Pt]:
    # every point outside [1,B]^2 is hit by a tail or the fixed quadrant
    B = p.bound
    covered = set(p.explicit.values())
    for j, s in enumerate(p.row_shifts, start=1):
        covered.update((i, j) for i in range(B + 1 - s, B + 1))
    for i, s in enumerate(p.col_shifts, start=1):
        covered.update((i, j) for j in range(B + 1 - s, B + 1))
    return {(i, j) for i in range(1, B + 1) for j in range(1, B + 1) if (i, j) not in covered}


def range_complement(alpha: Element) -> frozenset[Point]:
    gaps = _plus_range_complement(alpha.plus)
    if alpha.g:
        return frozenset(Point(y[1], y[0]) for y in gaps)
    return frozenset(Point(*y) for y in gaps)


def restrict(alpha: Element, extra_holes: Iterable[Pt]) -> Element:
    holes = {(int(h[0]), int(h[1])) for h in extra_holes}
    if not holes:
        return alpha
    B = max(alpha.plus.bound, max(max(h) for h in holes))
    p = expand_plus(alpha.plus, B)
    explicit = {x: y for x, y in p.explicit.items() if x not in holes}
    return Element(normalize_plus(PlusPart(B, explicit, p.row_shifts, p.col_shifts)), alpha.g)


def _padded_shifts_equal(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    n = max(len(a), len(b))
    return a + (0,) * (n - len(a)) == b + (0,) * (n - len(b))


def natural_leq(alpha: Element, beta: Element) -> bool:
    """alpha is a restriction of beta (the natural partial order)."""
    if alpha.g != beta.g:
        return False
    pa, pb = alpha.plus, beta.plus
    if not (
        _padded_shifts_equal(pa.row_shifts, pb.row_shifts)
        and _padded_shifts_equal(pa.col_shifts, pb.col_shifts)
    ):
        return False
    B = max(pa.bound, pb.bound)
    for i in range(1, B + 1):
        for j in range(1, B + 1):
            y = pa.eval(i, j)
            if y is not None and pb.eval(i, j) != y:
                return False
    return True


def natural_leq_witness(alpha: Element, beta: Element) -> Optional[Element]:
    """An idempotent e with beta * e == alpha, or None.

    Right multiplication filters by image, so e is the identity on ran alpha.
    """
    if not natural_leq(alpha, beta):
        return None
    eps = mk_partial_identity(range_complement(alpha))
    if compose(beta, eps) != alpha:
        raise InternalError("restriction test passed but witness does not reproduce alpha")
    return eps


def orientation(alpha: Element, check: bool = False) -> int:
    """The orientation bit; with ``check`` also confirm it by evaluation far out on H^1."""
    if check:
        B = alpha.plus.bound
        for k in range(B + 1, B + 4):
            y = apply(alpha, (k, 1))
            if y is None:
                raise ConsistencyError(f"row-1 tail point ({k},1) missing from domain")
            expected_row = y[1] == 1 and y[0] > 1
            expected_col = y[0] == 1 and y[1] > 1
            if (alpha.g == 0 and expected_col) or (alpha.g == 1 and expected_row):
                raise ConsistencyError(f"orientation bit {alpha.g} contradicts ({k},1) -> {y}")
    return alpha.g


def decompose(alpha: Element) -> tuple[Element, int]:
    """(alpha+, g) with alpha == alpha+ * swap^g and alpha+ orientation-preserving."""
    return Element(alpha.plus, 0), alpha.g


def automorphism_h(alpha: Element) -> Element:
    """swap * alpha * swap."""
    return Element(conj_plus(alpha.plus), alpha.g)


def _require_plus(alpha: Element, what: str) -> PlusPart:
    if alpha.g:
        raise ValueError(f"{what} is defined for orientation-preserving elements only")
    return alpha.plus


def n_alpha(alpha: Element) -> int:
    """Smallest n such that alpha fixes every domain point of the up-set of (n, n)."""
    p = _require_plus(alpha, "n_alpha")
    worst = 0
    for x, y in p.explicit.items():
        if x != y:
            worst = max(worst, min(x))
    for j, s in enumerate(p.row_shifts, start=1):
        if s:
            worst = max(worst, j)
    for i, s in enumerate(p.col_shifts, start=1):
        if s:
            worst = max(worst, i)
    return worst + 1


# -- serialization ----------------------------------------------------------


def to_json(alpha: Element) -> dict:
    p = alpha.plus
    return {
        "window": p.bound,
        "explicit": [[x[0], x[1], y[0], y[1]] for x, y in sorted(p.explicit.items())],
        "row_shifts": list(p.row_shifts),
        "col_shifts": list(p.col_shifts),
        "orientation": alpha.g,
    }


def from_json(obj: Mapping) -> Element:
    try:
        explicit = {(r[0], r[1]): (r[2], r[3]) for r in obj["explicit"]}
        if len(explicit) != len(obj["explicit"]):
            raise ValueError("duplicate explicit arguments")
        return make_element(
            int(obj["window"]),
            explicit,
            obj["row_shifts"],
            obj["col_shifts"],
            int(obj.get("orientation", 0)),
        )
    except (KeyError, TypeError, IndexError) as exc:
        raise ValueError(f"malformed element literal: {exc}") from exc


def dumps(alpha: Element) -> str:
    return json.dumps(to_json(normalize(alpha)), separators=(",", ":"))


def loads(text: str) -> Element:
    return from_json(json.loads(text))
