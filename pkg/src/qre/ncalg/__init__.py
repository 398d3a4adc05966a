"""Noncommutative polynomial algebras, rewriting and algebra-valued matrices."""

from __future__ import annotations

from .poly import FreeAlgebra, NCPoly, commutator, transport, words_of_weight
from .rewrite import (CompletionDiverged, DegreeExceeded, Presentation, RewriteSystem,
                      complete_to_degree)
from .matrix import AlgMatrix, AmbientMismatch, ShapeMismatch, mat_poly, tensor_identity
from .presentation import (PresentationParseError, format_presentation, load_presentation,
                           parse_presentation)

__all__ = [
    "FreeAlgebra", "NCPoly", "commutator", "transport", "words_of_weight",
    "CompletionDiverged", "DegreeExceeded", "Presentation", "RewriteSystem", "complete_to_degree",
    "AlgMatrix", "AmbientMismatch", "ShapeMismatch", "mat_poly", "tensor_identity",
    "PresentationParseError", "format_presentation", "load_presentation", "parse_presentation",
]
