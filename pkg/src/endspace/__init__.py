"""Symbolic classification of big mapping class groups from end-space terms."""

__version__ = "0.1.0"

from .classify import KWitness, Verdict, classify, is_self_similar, is_telescoping
from .normalize import MSInvariant, NotCountable, is_homeomorphic, ms_invariant, normalize
from .oracle import derivative_fingerprint
from .order import ClassPoset, EndClass, classes, is_tame, leq, maximal_classes
from .ordinal import OMEGA, ONE, ZERO, Ord, OrdinalError, compare
from .parser import ParseError, ValidityError, parse_any, parse_surface, parse_term, print_surface, print_term
from .terms import INF, GenusSpec, ScopeError, Surface, TermError, validate

__all__ = [
    "INF",
    "OMEGA",
    "ONE",
    "ZERO",
    "ClassPoset",
    "EndClass",
    "GenusSpec",
    "KWitness",
    "MSInvariant",
    "NotCountable",
    "Ord",
    "OrdinalError",
    "ParseError",
    "ScopeError",
    "Surface",
    "TermError",
    "ValidityError",
    "Verdict",
    "classes",
    "classify",
    "compare",
    "derivative_fingerprint",
    "is_homeomorphic",
    "is_self_similar",
    "is_tame",
    "is_telescoping",
    "leq",
    "maximal_classes",
    "ms_invariant",
    "normalize",
    "parse_any",
    "parse_surface",
    "parse_term",
    "print_surface",
    "print_term",
    "validate",
]
