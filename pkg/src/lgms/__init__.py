"""Landau-Ginzburg mirror symmetry workbench for half-Calabi-Yau invertible models."""

from .errors import DegenerateError, GroupOrderError, ModelError, PreconditionError
from .polyspec import ExponentMatrix, WeightSystem, parse_model, suspend, weights_of
from .symmetry import DiagonalSymmetry, SymmetryGroup, dual_group, resolve_group
from .tables import BigradedTable

__version__ = "0.1.0"

__all__ = [
    "BigradedTable", "DegenerateError", "DiagonalSymmetry", "ExponentMatrix",
    "GroupOrderError", "ModelError", "PreconditionError", "SymmetryGroup", "WeightSystem",
    "dual_group", "parse_model", "resolve_group", "suspend", "weights_of",
]
