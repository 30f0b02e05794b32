"""Free commutative monoid on {a_k} u {b_l}, its swap automorphism, the
semidirect product with Z_2, and the quotient maps onto them."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .element import Element, compose, compose_all, mk_gamma, mk_swap, mk_upsilon, power


def _canon(exps) -> tuple[tuple[int, int], ...]:
    if isinstance(exps, Mapping):
        exps = exps.items()
    acc: dict[int, int] = {}
    for k, e in exps:
        k, e = int(k), int(e)
        if k < 1:
            raise ValueError(f"generator index must be >= 1, got {k}")
        if e < 0:
            raise ValueError(f"exponent must be non-negative, got {e}")
        acc[k] = acc.get(k, 0) + e
    return tuple(sorted((k, e) for k, e in acc.items() if e))


@dataclass(frozen=True)
class FreeWord:
    """a_k and b_l exponents, stored sorted with zero entries dropped."""

    a: tuple[tuple[int, int], ...] = ()
    b: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", _canon(self.a))
        object.__setattr__(self, "b", _canon(self.b))

    @property
    def is_unit(self) -> bool:
        return not self.a and not self.b

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        return word_mul(self, other)

    def __str__(self) -> str:
        parts = [f"a{k}^{e}" if e > 1 else f"a{k}" for k, e in self.a]
        parts += [f"b{k}^{e}" if e > 1 else f"b{k}" for k, e in self.b]
        return " ".join(parts) or "e"

    def to_json(self) -> dict:
        return {"a": [list(t) for t in self.a], "b": [list(t) for t in self.b]}

    @classmethod
    def from_json(cls, obj: Mapping) -> "FreeWord":
        for key in ("a", "b"):
            for entry in obj.get(key, []):
                if len(entry) != 2 or int(entry[1]) < 1:
                    raise ValueError(f"bad exponent entry {entry!r} under {key!r}")
        return cls(tuple(map(tuple, obj.get("a", []))), tuple(map(tuple, obj.get("b", []))))


UNIT = FreeWord()


def word_mul(u: FreeWord, v: FreeWord) -> FreeWord:
    return FreeWord(u.a + v.a, u.b + v.b)


def auto_f(u: FreeWord) -> FreeWord:
    """Exchange the a- and b-exponents."""
    return FreeWord(u.b, u.a)


@dataclass(frozen=True)
class SemidirectElement:
    word: FreeWord = UNIT
    g: int = 0

    def __post_init__(self) -> None:
        if self.g not in (0, 1):
            raise ValueError(f"orientation bit must be 0 or 1, got {self.g!r}")

    def __mul__(self, other: "SemidirectElement") -> "SemidirectElement":
        return semidirect_mul(self, other)

    def to_json(self) -> dict:
        return {**self.word.to_json(), "g": self.g}

    @classmethod
    def from_json(cls, obj: Mapping) -> "SemidirectElement":
        return cls(FreeWord.from_json(obj), int(obj.get("g", 0)))


def semidirect_mul(x: SemidirectElement, y: SemidirectElement) -> SemidirectElement:
    v = auto_f(y.word) if x.g else y.word
    return SemidirectElement(word_mul(x.word, v), x.g ^ y.g)


def h_sigma(alpha: Element) -> FreeWord:
    """The free word of the sigma-class of an orientation-preserving element."""
    from .congruence import generator_word

    if alpha.g:
        raise ValueError("h_sigma is defined on orientation-preserving elements only")
    return generator_word(alpha)


def iota_map(alpha: Element) -> SemidirectElement:
    from .congruence import generator_word

    return SemidirectElement(generator_word(Element(alpha.plus, 0)), alpha.g)


def word_product(word: FreeWord, reverse: bool = False) -> Element:
    """gamma_k^e ... then upsilon_l^f ...; with ``reverse`` the upsilon block comes first."""
    gammas = [power(mk_gamma(k), e) for k, e in word.a]
    upsilons = [power(mk_upsilon(k), e) for k, e in word.b]
    return compose_all(upsilons + gammas if reverse else gammas + upsilons)


def preimage(x: SemidirectElement) -> Element:
    """An element whose image under iota_map is ``x``."""
    base = word_product(x.word)
    return compose(base, mk_swap()) if x.g else base

