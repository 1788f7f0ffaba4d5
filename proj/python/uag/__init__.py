"""Universal algebraic geometry over finite algebras."""

import json as _json

from ._uag import (
    CapExceeded,
    Error,
    FiniteAlgebra,
    InputError,
    OutsideVariety,
    ParseError,
    Variety,
    corpus,
    lattice_dot,
    parse_algebras,
    read_algebra,
    read_algebras,
    read_variety,
)
from . import _uag


def _words(words):
    return _json.dumps({"words": words})


def star_algebra(H, words):
    """H with every operation replaced by the given word, {"mul": "mul(x2,x1)", ...}."""
    return _uag.star_algebra(H, _words(words))


def free_algebra(v, rank):
    return _json.loads(v.free_json(rank))


def lattice(v, H, rank):
    return _json.loads(_uag.lattice_json(v, H, rank))


def check_words(v, words, n_max=0):
    return _json.loads(_uag.check_words_json(v, _words(words), n_max))


def geom_eq(H1, H2, v, n_max=0):
    return _json.loads(_uag.geom_eq_json(H1, H2, v, n_max))


def auto_eq(H1, H2, v, depth=1, n_max=0):
    return _json.loads(_uag.auto_eq_json(H1, H2, v, depth, n_max))


def verify_builtin():
    return _uag.verify_builtin_text()


__all__ = [
    "CapExceeded", "Error", "FiniteAlgebra", "InputError", "OutsideVariety", "ParseError", "Variety",
    "auto_eq", "check_words", "corpus", "free_algebra", "geom_eq", "lattice", "lattice_dot",
    "parse_algebras", "read_algebra", "read_algebras", "read_variety", "star_algebra",
    "verify_builtin",
]
