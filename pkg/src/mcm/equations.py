"""All solutions of alpha*chi = beta and chi*alpha = beta, and inverses.

Both equations reduce to orientation-preserving parts.  A solution is forced
everywhere except on a finite free set F; each free point f is either a hole
or maps to some z <= f (every orientation-preserving member moves points
weakly down), so the search space is a finite box per free point.
"""

from __future__ import annotations

from typing import Optional

from .element import (
    Element,
    PlusPart,
    compose,
    conj_plus,
    domain_complement,
    normalize_plus,
    validate,
)
from .errors import InternalError, MarginTooSmall

Pt = tuple[int, int]


def _shift_diff(b: tuple[int, ...], a: tuple[int, ...]) -> Optional[tuple[int, ...]]:
    n = max(len(a), len(b))
    a = a + (0,) * (n - len(a))
    b = b + (0,) * (n - len(b))
    d = tuple(x - y for x, y in zip(b, a))
    if any(s < 0 for s in d) or any(d[k] < d[k + 1] for k in range(n - 1)):
        return None
    return d


def _analytic_bound(a: PlusPart, b: PlusPart) -> int:
    return max(a.bound, b.bound) + a.max_shift + b.max_shift + 1


def _pad(v: tuple[int, ...], n: int) -> tuple[int, ...]:
    return v[:n] + (0,) * (n - len(v))


def _window_for(a: PlusPart, b: PlusPart, search_margin: Optional[int]) -> int:
    bound = _analytic_bound(a, b)
    if search_margin is None:
        return bound
    if search_margin < bound:
        raise MarginTooSmall(f"search margin {search_margin} below analytic bound {bound}")
    return search_margin


def _extend(
    forced: dict[Pt, Optional[Pt]],
    free: list[Pt],
    candidates: dict[Pt, list[Pt]],
):
    """Backtrack over free points; each gets a hole or a candidate image.

    ``forced`` maps window points to images (None for holes).  Free-point
    choices are checked against forced points and earlier choices.
    """
    fixed = [(x, y) for x, y in forced.items() if y is not None]
    used = {y for _, y in fixed}
    chosen: dict[Pt, Optional[Pt]] = {}

    def compatible(f: Pt, z: Pt) -> bool:
        for x, y in chosen.items():
            if y is None or x == f:
                continue
            if y == z:
                return False
            if x[0] <= f[0] and x[1] <= f[1] and not (y[0] <= z[0] and y[1] <= z[1]):
                return False
            if f[0] <= x[0] and f[1] <= x[1] and not (z[0] <= y[0] and z[1] <= y[1]):
                return False
        return True

    def rec(k: int):
        if k == len(free):
            yield dict(chosen)
            return
        f = free[k]
        chosen[f] = None
        yield from rec(k + 1)
        for z in candidates[f]:
            if z in used or not compatible(f, z):
                continue
            chosen[f] = z
            yield from rec(k + 1)
        del chosen[f]

    yield from rec(0)


def _box_candidates(f: Pt, forced: dict[Pt, Optional[Pt]], allowed=None) -> list[Pt]:
    """Images z <= f consistent with forced points above and below f."""
    lo1 = lo2 = 1
    hi1, hi2 = f
    for x, y in forced.items():
        if y is None:
            continue
        if f[0] <= x[0] and f[1] <= x[1]:
            hi1, hi2 = min(hi1, y[0]), min(hi2, y[1])
        elif x[0] <= f[0] and x[1] <= f[1]:
            lo1, lo2 = max(lo1, y[0]), max(lo2, y[1])
    out = []
    for u in range(lo1, hi1 + 1):
        for v in range(lo2, hi2 + 1):
            if allowed is None or (u, v) in allowed:
                out.append((u, v))
    return out


def _assemble(
    W: int, forced: dict[Pt, Optional[Pt]], choice: dict[Pt, Optional[Pt]], P, Q
) -> Optional[PlusPart]:
    explicit = {x: y for x, y in forced.items() if y is not None}
    explicit.update({x: y for x, y in choice.items() if y is not None})
    plus = PlusPart(W, explicit, _pad(P, W), _pad(Q, W))
    if not validate(plus):
        return None
    return normalize_plus(plus)


def _solve_plus_right(
    a: PlusPart, b: PlusPart, search_margin: Optional[int], limit: Optional[int] = None
) -> list[PlusPart]:
    """All orientation-preserving c with a then c equal to b."""
    P = _shift_diff(b.row_shifts, a.row_shifts)
    Q = _shift_diff(b.col_shifts, a.col_shifts)
    if P is None or Q is None:
        return []
    W = _window_for(a, b, search_margin)
    # dom b must sit inside dom a; all of dom a's holes live in a's window
    for x in [(i, j) for i in range(1, a.bound + 1) for j in range(1, a.bound + 1)]:
        if a.eval(*x) is None and b.eval(*x) is not None:
            return []
    # preimages of window points lie within W + max shift of a
    L = W + a.max_shift
    forced: dict[Pt, Optional[Pt]] = {}
    for i in range(1, L + 1):
        for j in range(1, L + 1):
            y = a.eval(i, j)
            if y is None or y[0] > W or y[1] > W:
                continue
            forced[y] = b.eval(i, j)
    free = [(i, j) for i in range(1, W + 1) for j in range(1, W + 1) if (i, j) not in forced]
    images = {y for y in forced.values() if y is not None}
    if len(images) != sum(1 for y in forced.values() if y is not None):
        return []
    cands = {f: [z for z in _box_candidates(f, forced) if z not in images] for f in free}
    out = []
    for choice in _extend(forced, free, cands):
        c = _assemble(W, forced, choice, P, Q)
        if c is not None:
            out.append(c)
            if limit is not None and len(out) >= limit:
                break
    return out


def _solve_plus_left(
    a: PlusPart, b: PlusPart, search_margin: Optional[int], limit: Optional[int] = None
) -> list[PlusPart]:
    """All orientation-preserving c with c then a equal to b."""
    P = _shift_diff(b.row_shifts, a.row_shifts)
    Q = _shift_diff(b.col_shifts, a.col_shifts)
    if P is None or Q is None:
        return []
    W = _window_for(a, b, search_margin)
    # invert a on the part of its range that b can reach from the window
    L = W + a.max_shift
    inv: dict[Pt, Pt] = {}
    for i in range(1, L + 1):
        for j in range(1, L + 1):
            y = a.eval(i, j)
            if y is not None:
                inv[y] = (i, j)
    a_holes = {
        (i, j) for i in range(1, a.bound + 1) for j in range(1, a.bound + 1) if a.eval(i, j) is None
    }
    forced: dict[Pt, Optional[Pt]] = {}
    free = []
    for i in range(1, W + 1):
        for j in range(1, W + 1):
            y = b.eval(i, j)
            if y is None:
                free.append((i, j))
                continue
            x = inv.get(y)
            if x is None:
                return []
            forced[(i, j)] = x
    cands = {f: _box_candidates(f, forced, a_holes) for f in free}
    out = []
    for choice in _extend(forced, free, cands):
        c = _assemble(W, forced, choice, P, Q)
        if c is not None:
            out.append(c)
            if limit is not None and len(out) >= limit:
                break
    return out


def _dedupe(sols: list[Element]) -> list[Element]:
    seen, out = set(), []
    for s in sols:
        if s.key not in seen:
            seen.add(s.key)
            out.append(s)
    out.sort(key=lambda e: e.key)
    return out


def solve_right(
    alpha: Element,
    beta: Element,
    search_margin: Optional[int] = None,
    limit: Optional[int] = None,
) -> list[Element]:
    """Every chi with alpha*chi == beta, sorted by canonical key.

    ``limit`` stops after that many solutions (the result is then partial).
    """
    g = alpha.g ^ beta.g
    # alpha*chi has plus part a . h^{g_alpha}(c)
    sols = []
    for c in _solve_plus_right(alpha.plus, beta.plus, search_margin, limit):
        chi = Element(conj_plus(c) if alpha.g else c, g)
        if compose(alpha, chi) != beta:
            raise InternalError("solve_right produced a non-solution")
        sols.append(chi)
    return _dedupe(sols)


def solve_left(
    alpha: Element,
    beta: Element,
    search_margin: Optional[int] = None,
    limit: Optional[int] = None,
) -> list[Element]:
    """Every chi with chi*alpha == beta, sorted by canonical key.

    ``limit`` stops after that many solutions (the result is then partial).
    """
    g = alpha.g ^ beta.g
    a = conj_plus(alpha.plus) if g else alpha.plus
    sols = []
    for c in _solve_plus_left(a, beta.plus, search_margin, limit):
        chi = Element(c, g)
        if compose(chi, alpha) != beta:
            raise InternalError("solve_left produced a non-solution")
        sols.append(chi)
    return _dedupe(sols)


def try_inverse(alpha: Element) -> Optional[Element]:
    """The set-theoretic inverse when it is again a member, else None.

    A nonzero tail shift inverts to a right/up shift, which clashes with the
    fixed quadrant, so only shift-free elements can have member inverses.
    """
    p = alpha.plus
    if any(p.row_shifts) or any(p.col_shifts):
        return None
    inv = {y: x for x, y in p.explicit.items()}
    cand = PlusPart(p.bound, inv, p.row_shifts, p.col_shifts)
    if not validate(cand):
        return None
    out = Element(conj_plus(cand) if alpha.g else cand, alpha.g)
    if compose(alpha, out) != _identity_on(alpha, domain=True):
        raise InternalError("inverse candidate does not cancel on the domain")
    return out


def _identity_on(alpha: Element, domain: bool) -> Element:
    from .element import mk_partial_identity, range_complement

    holes = domain_complement(alpha) if domain else range_complement(alpha)
    return mk_partial_identity(holes)
