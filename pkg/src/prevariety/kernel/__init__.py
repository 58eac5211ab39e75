"""Exact linear algebra and linear programming over the integers."""

from .ddm import extreme_rays
from .linalg import dot, echelon, kernel_basis, primitive, rank, reduce_modulo
from .lp import (
    FeasibilityVerdict,
    dimension,
    implied_equations,
    interior_point,
    is_feasible,
    lp_feasible,
    remove_redundant,
)
from .system import ConstraintSystem

__all__ = [
    "ConstraintSystem",
    "FeasibilityVerdict",
    "dimension",
    "dot",
    "echelon",
    "extreme_rays",
    "implied_equations",
    "interior_point",
    "is_feasible",
    "kernel_basis",
    "lp_feasible",
    "primitive",
    "rank",
    "reduce_modulo",
    "remove_redundant",
]
