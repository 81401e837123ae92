"""A two-sorted gradual kernel with internal precision: syntax, reduction,
typing, precision deciders, the level-raising fragment, and an executable
model oracle."""

import sys as _sys

if _sys.getrecursionlimit() < 30000:
    _sys.setrecursionlimit(30000)

from . import syntax, surface, reduction, typecheck, prelude  # noqa: F401
from . import precision, gripup, model, generators  # noqa: F401

__all__ = ["syntax", "surface", "reduction", "typecheck", "prelude",
           "precision", "gripup", "model", "generators"]
