"""Exact tests for extending Azumaya algebras with C2-action over character curves."""

from .equivariance import GroupAction, compose_actions, solve_conjugator
from .funcfield import BiPoly, CurvePoly, FFElem
from .local import global_verdict, point_verdict
from .quaternion import QuatAlgebra, QuatElem
from .tautological import Word, build_symbol, eval_word, parse_word, reducible_locus

__version__ = "0.1.0"

__all__ = [
    "BiPoly",
    "CurvePoly",
    "FFElem",
    "GroupAction",
    "QuatAlgebra",
    "QuatElem",
    "Word",
    "build_symbol",
    "compose_actions",
    "eval_word",
    "global_verdict",
    "parse_word",
    "point_verdict",
    "reducible_locus",
    "solve_conjugator",
]
