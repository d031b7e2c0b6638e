"""Surgery calculus for satellite knots.

Knot expressions are parsed into trees, decomposed into JSJ pieces, surgered
along a slope, and checked against effective characterizing-slope bounds.
The :mod:`surgcalc.oracle` module re-derives the arithmetic and homology
claims by brute force.
"""
from .certify import Bound, Characterizing, Unknown, applicable_theorems, best_bound, certify
from .jsj import JsjGraph, fibre_slope, jsj
from .knots import (
    Cable,
    HypKnot,
    HypPattern,
    KnotSemanticError,
    KnotSyntaxError,
    Sum,
    TorusKnot,
    normalize,
    parse,
    to_text,
)
from .slopes import MERIDIAN, BasisChange, Slope, change_basis, classify_slope, distance, parse_slope
from .snf import AbelianGroup, smith_normal_form
from .surgery import (
    SurgeryError,
    cable_reduce,
    filled_pattern_homology,
    filled_pattern_longitude,
    shape_equal,
    surger,
)

__version__ = "0.1.0"
