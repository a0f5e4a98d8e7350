"""Ivlev-style modal expansions of four-valued paraconsistent logic.

Formulas, snapshot domains, non-deterministic matrices built from
per-coordinate specifications, decision procedures, Hilbert calculi with a
proof checker, and conservativity checks between the combined logics and
their components.
"""

from .formula import Formula, Signature, parse, to_text
from .nmatrix import LogicId, Nmatrix, apply, build, superpose
from .decide import decide, entails, is_satisfiable, is_valid, truth_table
from .hilbert import calculus, verify_proof

__all__ = [
    "Formula", "Signature", "parse", "to_text", "LogicId", "Nmatrix", "apply", "build",
    "superpose", "decide", "entails", "is_satisfiable", "is_valid", "truth_table",
    "calculus", "verify_proof",
]
