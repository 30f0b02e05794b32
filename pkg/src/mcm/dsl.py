"""A small expression language for elements.

Grammar::

    expr  := term { "*" term }
    term  := atom [ "^" NAT ]
    atom  := "I" | "W" | "G" NAT | "U" NAT | "E" "{" [ point { "," point } ] "}"
           | "(" expr ")" | "@" path | "@" "{" json "}"
    point := "(" NAT "," NAT ")"

``A * B`` applies A first, then B: maps act on the right, so the product
reads left to right, the reverse of the usual function-composition order.
``@{...}`` embeds an element literal in the JSON schema of :mod:`mcm.element`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union

from .element import (
    Element,
    compose_all,
    domain_complement,
    dumps,
    from_json,
    mk_gamma,
    mk_identity,
    mk_partial_identity,
    mk_swap,
    mk_upsilon,
    natural_leq,
    power,
)
from .errors import MCMError


class DSLError(MCMError, ValueError):
    def __init__(self, message: str, line: int, col: int):
        self.message, self.line, self.col = message, line, col
        super().__init__(f"line {line}, col {col}: {message}")


# -- AST ---------------------------------------------------------------------


@dataclass(frozen=True)
class Ident:
    name: str  # "I" or "W"


@dataclass(frozen=True)
class Gen:
    kind: str  # "G" or "U"
    n: int


@dataclass(frozen=True)
class Holes:
    points: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class Literal:
    source: str  # a path, or inline JSON text
    inline: bool


@dataclass(frozen=True)
class Power:
    base: "Expr"
    k: int


@dataclass(frozen=True)
class Product:
    factors: tuple["Expr", ...]


Expr = Union[Ident, Gen, Holes, Literal, Power, Product]


# -- tokenizer ---------------------------------------------------------------


@dataclass(frozen=True)
class Token:
    kind: str  # NAT, SYM, NAME, PATH, JSON, EOF
    text: str
    line: int
    col: int


_SYMBOLS = set("*^(){},")
_NAMES = set("IWGUE")


def tokenize(text: str) -> list[Token]:
    toks: list[Token] = []
    pos, line, col = 0, 1, 1
    n = len(text)

    def advance(k: int) -> None:
        nonlocal pos, line, col
        for ch in text[pos : pos + k]:
            if ch == "\n":
                line, col = line + 1, 1
            else:
                col += 1
        pos += k

    while pos < n:
        ch = text[pos]
        if ch.isspace():
            advance(1)
            continue
        start_line, start_col = line, col
        if ch.isdigit():
            end = pos
            while end < n and text[end].isdigit():
                end += 1
            toks.append(Token("NAT", text[pos:end], start_line, start_col))
            advance(end - pos)
        elif ch in _SYMBOLS:
            toks.append(Token("SYM", ch, start_line, start_col))
            advance(1)
        elif ch in _NAMES:
            toks.append(Token("NAME", ch, start_line, start_col))
            advance(1)
        elif ch == "@":
            if pos + 1 < n and text[pos + 1] == "{":
                depth, end = 0, pos + 1
                while end < n:
                    if text[end] == "{":
                        depth += 1
                    elif text[end] == "}":
                        depth -= 1
                        if depth == 0:
                            break
                    end += 1
                if end >= n:
                    raise DSLError("unterminated inline literal", start_line, start_col)
                toks.append(Token("JSON", text[pos + 1 : end + 1], start_line, start_col))
                advance(end + 1 - pos)
            else:
                end = pos + 1
                while end < n and not text[end].isspace() and text[end] not in "*^)":
                    end += 1
                if end == pos + 1:
                    raise DSLError("expected a path after '@'", start_line, start_col)
                toks.append(Token("PATH", text[pos + 1 : end], start_line, start_col))
                advance(end - pos)
        else:
            raise DSLError(f"unexpected character {ch!r}", start_line, start_col)
    toks.append(Token("EOF", "", line, col))
    return toks


# -- parser ------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.k = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.k]

    def fail(self, message: str, tok: Optional[Token] = None):
        tok = tok or self.tok
        raise DSLError(message, tok.line, tok.col)

    def eat(self, kind: str, text: Optional[str] = None) -> Token:
        tok = self.tok
        if tok.kind != kind or (text is not None and tok.text != text):
            want = repr(text) if text is not None else kind.lower()
            got = "end of input" if tok.kind == "EOF" else repr(tok.text)
            self.fail(f"expected {want}, found {got}")
        self.k += 1
        return tok

    def at(self, kind: str, text: Optional[str] = None) -> bool:
        tok = self.tok
        return tok.kind == kind and (text is None or tok.text == text)

    def expr(self) -> Expr:
        factors = [self.term()]
        while self.at("SYM", "*"):
            self.k += 1
            factors.append(self.term())
        return factors[0] if len(factors) == 1 else Product(tuple(factors))

    def term(self) -> Expr:
        base = self.atom()
        if self.at("SYM", "^"):
            self.k += 1
            return Power(base, int(self.eat("NAT").text))
        return base

    def nat(self) -> int:
        return int(self.eat("NAT").text)

    def atom(self) -> Expr:
        tok = self.tok
        if tok.kind == "NAME":
            self.k += 1
            if tok.text in "IW":
                return Ident(tok.text)
            if tok.text in "GU":
                n = self.nat()
                if n < 1:
                    self.fail(f"generator index must be >= 1, got {n}", tok)
                return Gen(tok.text, n)
            return self.holes()
        if tok.kind == "SYM" and tok.text == "(":
            self.k += 1
            inner = self.expr()
            self.eat("SYM", ")")
            return inner
        if tok.kind == "PATH":
            self.k += 1
            return Literal(tok.text, inline=False)
        if tok.kind == "JSON":
            self.k += 1
            return Literal(tok.text, inline=True)
        got = "end of input" if tok.kind == "EOF" else repr(tok.text)
        self.fail(f"expected an expression, found {got}")

    def holes(self) -> Holes:
        self.eat("SYM", "{")
        pts: list[tuple[int, int]] = []
        if not self.at("SYM", "}"):
            while True:
                start = self.eat("SYM", "(")
                i = self.nat()
                self.eat("SYM", ",")
                j = self.nat()
                self.eat("SYM", ")")
                if i < 1 or j < 1:
                    self.fail(f"point ({i},{j}) is not in N x N", start)
                if (i, j) in pts:
                    self.fail(f"duplicate point ({i},{j})", start)
                pts.append((i, j))
                if not self.at("SYM", ","):
                    break
                self.k += 1
        self.eat("SYM", "}")
        return Holes(tuple(pts))


def parse(text: str) -> Expr:
    p = _Parser(text)
    out = p.expr()
    if not p.at("EOF"):
        p.fail(f"unexpected {p.tok.text!r} after expression")
    return out


# -- evaluation --------------------------------------------------------------


def _load_literal(node: Literal, base_dir: Optional[Path]) -> Element:
    if node.inline:
        raw = node.source
    else:
        path = Path(node.source)
        if base_dir is not None and not path.is_absolute():
            path = base_dir / path
        raw = path.read_text()
    try:
        obj = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ValueError(f"element literal is not valid JSON: {exc}") from exc
    return from_json(obj)


def evaluate(node: Expr, base_dir: Optional[Path] = None) -> Element:
    if isinstance(node, Ident):
        return mk_identity() if node.name == "I" else mk_swap()
    if isinstance(node, Gen):
        return mk_gamma(node.n) if node.kind == "G" else mk_upsilon(node.n)
    if isinstance(node, Holes):
        return mk_partial_identity(node.points)
    if isinstance(node, Literal):
        return _load_literal(node, base_dir)
    if isinstance(node, Power):
        return power(evaluate(node.base, base_dir), node.k)
    if isinstance(node, Product):
        return compose_all(evaluate(f, base_dir) for f in node.factors)
    raise TypeError(f"not an expression node: {node!r}")


def eval_text(text: str, base_dir: Optional[Path] = None) -> Element:
    return evaluate(parse(text), base_dir)


# -- printing ----------------------------------------------------------------


def _word_factors(alpha_plus: Element) -> list[str]:
    from .congruence import generator_word

    word = generator_word(alpha_plus)
    out = [f"G{k}^{e}" if e > 1 else f"G{k}" for k, e in word.a]
    out += [f"U{k}^{e}" if e > 1 else f"U{k}" for k, e in word.b]
    return out


def _holes_block(points) -> str:
    return "E{" + ",".join(f"({i},{j})" for i, j in sorted(points)) + "}"


def _literal_block(alpha: Element) -> str:
    return "@" + dumps(alpha)


def _deviation(alpha_plus: Element, word_elem: Element):
    """(prefix, suffix) factors with prefix * word * suffix == alpha_plus, or None."""
    from .equations import solve_left, solve_right

    if natural_leq(alpha_plus, word_elem):
        holes = domain_complement(alpha_plus) - domain_complement(word_elem)
        return ([_holes_block(holes)] if holes else []), []
    left = solve_left(word_elem, alpha_plus, limit=1)
    if left:
        return [_literal_block(left[0])], []
    right = solve_right(word_elem, alpha_plus, limit=1)
    if right:
        return [], [_literal_block(right[0])]
    return None


def to_text(alpha: Element) -> str:
    """Generator word of the sigma-class plus a finite correction, then W if orientation flips.

    The output always evaluates back to ``alpha``.
    """
    from .congruence import generator_word
    from .quotient import word_product

    plus = Element(alpha.plus, 0)
    word = _word_factors(plus)
    dev = _deviation(plus, word_product(generator_word(plus)))
    if dev is None:
        factors = [_literal_block(plus)]
    else:
        prefix, suffix = dev
        factors = prefix + word + suffix
    if alpha.g:
        factors.append("W")
    text = " * ".join(factors) if factors else "I"
    if eval_text(text) != alpha:
        text = _literal_block(alpha)
    return text
