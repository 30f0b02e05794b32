"""Exact computation with monotone injective cofinite partial selfmaps of N x N."""

from .element import (
    Element,
    PlusPart,
    apply,
    compose,
    equals,
    make_element,
    mk_gamma,
    mk_identity,
    mk_partial_identity,
    mk_swap,
    mk_upsilon,
    natural_leq,
    normalize,
    validate,
)
from .errors import MCMError

__version__ = "0.1.0"
