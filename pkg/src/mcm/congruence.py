"""The congruence sigma (agreement on a cofinite set), the partial-shift
normal form alpha_f, generator words, and the idempotents that witness them."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .element import (
    Element,
    apply,
    compose,
    mk_partial_identity,
    n_alpha,
    range_complement,
    restrict,
)
from .errors import InternalError
from .quotient import FreeWord, word_product


def _trim(v: tuple[int, ...]) -> tuple[int, ...]:
    n = len(v)
    while n and v[n - 1] == 0:
        n -= 1
    return tuple(v[:n])


@dataclass(frozen=True)
class ShiftProfile:
    """Eventual row/column shifts plus the cut-off thresholds used by alpha_f."""

    row: tuple[int, ...]
    col: tuple[int, ...]
    h_bar: int = 0
    v_bar: int = 0
    h_hat: int = 1
    v_hat: int = 1

    def to_word(self) -> FreeWord:
        return _word_from_shifts(self.row, self.col)


@dataclass(frozen=True)
class SigmaWitness:
    epsilon: Element


def _require_preserving(alpha: Element, what: str) -> None:
    if alpha.g:
        raise ValueError(f"{what} is defined for orientation-preserving elements only")


def sigma_equiv(alpha: Element, beta: Element) -> bool:
    pa, pb = alpha.plus, beta.plus
    return (
        alpha.g == beta.g
        and _trim(pa.row_shifts) == _trim(pb.row_shifts)
        and _trim(pa.col_shifts) == _trim(pb.col_shifts)
    )


def _agreement_holes(alpha: Element, beta: Element) -> tuple[int, set]:
    """Window bound and the window points where alpha and beta are not both defined and equal."""
    B = max(alpha.plus.bound, beta.plus.bound)
    bad = set()
    for i in range(1, B + 1):
        for j in range(1, B + 1):
            y = apply(alpha, (i, j))
            if y is None or y != apply(beta, (i, j)):
                bad.add((i, j))
    return B, bad


def sigma_witness(alpha: Element, beta: Element) -> Optional[SigmaWitness]:
    """An idempotent e with alpha*e == beta*e, or None when not sigma-equivalent.

    e is the identity on the images of the agreement set: it removes
    everything outside ran alpha and every image of a disagreement point.
    """
    if not sigma_equiv(alpha, beta):
        return None
    _, bad = _agreement_holes(alpha, beta)
    holes = set(range_complement(alpha))
    for x in bad:
        y = apply(alpha, x)
        if y is not None:
            holes.add(y)
    eps = mk_partial_identity(holes)
    if compose(alpha, eps) != compose(beta, eps):
        raise InternalError("profiles agree but the agreement idempotent does not equalize")
    return SigmaWitness(eps)


@dataclass(frozen=True)
class SigmaForms:
    """Idempotents realising each equivalent formulation of sigma."""

    right: Element  # alpha*e == beta*e
    right_pair: tuple[Element, Element]  # alpha*s == beta*u
    mixed_pair: tuple[Element, Element]  # alpha*s == u*beta
    left: Element  # i*alpha == i*beta
    left_pair: tuple[Element, Element]  # s*alpha == u*beta


def sigma_forms(alpha: Element, beta: Element) -> Optional[SigmaForms]:
    """Construct and verify every witness form, or None when not equivalent."""
    w = sigma_witness(alpha, beta)
    if w is None:
        return None
    eps = w.epsilon
    b_eps = compose(beta, eps)
    # u is the identity on dom(beta*eps), so u*beta == beta*eps
    u = mk_partial_identity(_window_dom_complement(b_eps))
    _, bad = _agreement_holes(alpha, beta)
    iota = mk_partial_identity(bad)
    forms = SigmaForms(eps, (eps, eps), (eps, u), iota, (iota, iota))
    checks = [
        compose(alpha, eps) == compose(beta, eps),
        compose(alpha, eps) == compose(u, beta),
        compose(iota, alpha) == compose(iota, beta),
    ]
    if not all(checks):
        raise InternalError(f"sigma witness forms failed: {checks}")
    return forms


def _window_dom_complement(alpha: Element) -> set:
    p = alpha.plus
    return {
        (i, j)
        for i in range(1, p.bound + 1)
        for j in range(1, p.bound + 1)
        if (i, j) not in p.explicit
    }


# -- partial-shift normal form ----------------------------------------------


def row_threshold(alpha: Element, i: int) -> int:
    """Least h such that every (k, i), k >= h, is in dom and ran and maps into row i."""
    _require_preserving(alpha, "row_threshold")
    p = alpha.plus
    ran_gaps = range_complement(alpha)
    h = p.bound + 1
    while h > 1:
        x = (h - 1, i)
        y = p.eval(*x)
        if y is None or y[1] != i or x in ran_gaps:
            break
        h -= 1
    return h


def col_threshold(alpha: Element, j: int) -> int:
    """Column analogue of :func:`row_threshold` on V^j = {(j, k)}."""
    _require_preserving(alpha, "col_threshold")
    p = alpha.plus
    ran_gaps = range_complement(alpha)
    v = p.bound + 1
    while v > 1:
        x = (j, v - 1)
        y = p.eval(*x)
        if y is None or y[0] != j or x in ran_gaps:
            break
        v -= 1
    return v


def shift_profile(alpha: Element) -> ShiftProfile:
    _require_preserving(alpha, "shift_profile")
    p = alpha.plus
    n = n_alpha(alpha)
    h_bar = max((row_threshold(alpha, i) for i in range(1, n)), default=0)
    v_bar = max((col_threshold(alpha, j) for j in range(1, n)), default=0)
    row, col = _trim(p.row_shifts), _trim(p.col_shifts)
    return ShiftProfile(row, col, h_bar, v_bar, len(row) + 1, len(col) + 1)


def cut_region(alpha: Element) -> set:
    """Points removed by alpha_f: the low parts of rows/columns below n_alpha."""
    prof = shift_profile(alpha)
    n = n_alpha(alpha)
    cut = set()
    for i in range(1, prof.h_bar + 1):
        for j in range(1, n + 1):
            cut.add((i, j))
    for i in range(1, n + 1):
        for j in range(1, prof.v_bar + 1):
            cut.add((i, j))
    return cut


def alpha_f(alpha: Element) -> Element:
    """alpha restricted to the region where each low row/column is a plain shift."""
    _require_preserving(alpha, "alpha_f")
    out = restrict(alpha, cut_region(alpha))
    if not sigma_equiv(alpha, out):
        raise InternalError("alpha_f left the sigma-class of alpha")
    return out


def shift_property_violations(alpha: Element, n: int, window: int) -> list:
    """Consecutive domain points on rows/columns below n that are not moved by a common shift.

    For row j this checks that (i, j) and (i+1, j) in dom map to (u, j) and
    (u+1, j); columns likewise.  Returns offending pairs, empty when clean.
    """
    bad = []
    for j in range(1, n):
        for i in range(1, window):
            y, z = apply(alpha, (i, j)), apply(alpha, (i + 1, j))
            if y is None or z is None:
                continue
            if y[1] != j or z != (y[0] + 1, j):
                bad.append(((i, j), (i + 1, j)))
    for i in range(1, n):
        for j in range(1, window):
            y, z = apply(alpha, (i, j)), apply(alpha, (i, j + 1))
            if y is None or z is None:
                continue
            if y[0] != i or z != (i, y[1] + 1):
                bad.append(((i, j), (i, j + 1)))
    return bad


# -- generator words --------------------------------------------------------


def _word_from_shifts(row: tuple[int, ...], col: tuple[int, ...]) -> FreeWord:
    def diffs(v):
        v = list(v) + [0]
        return tuple((k + 1, v[k] - v[k + 1]) for k in range(len(v) - 1))

    return FreeWord(diffs(row), diffs(col))


def generator_word(alpha: Element) -> FreeWord:
    """Exponent of a_k is P_k - P_{k+1}; of b_l is Q_l - Q_{l+1}."""
    _require_preserving(alpha, "generator_word")
    return _word_from_shifts(alpha.plus.row_shifts, alpha.plus.col_shifts)


def hat_epsilon(alpha: Element, word: Optional[FreeWord] = None) -> Element:
    """A cofinite partial identity e with e*alpha equal to e times the generator product.

    The identity is taken on the complement of [1, m]^2.  The size m is at
    least n + h_bar + v_bar + (sum of exponents), and is raised to cover the
    window of alpha and of both generator products, since holes of alpha far
    from the diagonal are not bounded by the threshold sum alone.
    """
    _require_preserving(alpha, "hat_epsilon")
    if word is None:
        word = generator_word(alpha)
    prof = shift_profile(alpha)
    prod = word_product(word)
    prod_rev = word_product(word, reverse=True)
    total = sum(e for _, e in word.a) + sum(e for _, e in word.b)
    m = n_alpha(alpha) + prof.h_bar + prof.v_bar + total
    m = max(m, alpha.normal.plus.bound, prod.normal.plus.bound, prod_rev.normal.plus.bound)
    eps = mk_partial_identity((i, j) for i in range(1, m + 1) for j in range(1, m + 1))
    lhs = compose(eps, alpha)
    if not (lhs == compose(eps, prod) == compose(eps, prod_rev)):
        raise InternalError("cofinite identity does not equalize alpha with its generator product")
    return eps


def hat_epsilon_size_from_thresholds(alpha: Element, word: Optional[FreeWord] = None) -> int:
    """The threshold-sum size n + h_bar + v_bar + sum of exponents, without enlargement."""
    _require_preserving(alpha, "hat_epsilon_size_from_thresholds")
    if word is None:
        word = generator_word(alpha)
    prof = shift_profile(alpha)
    total = sum(e for _, e in word.a) + sum(e for _, e in word.b)
    return n_alpha(alpha) + prof.h_bar + prof.v_bar + total
