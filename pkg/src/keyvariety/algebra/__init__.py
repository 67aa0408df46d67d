"""Exact arithmetic over Q(i): scalars, sparse polynomials, ring maps,
polynomial matrices and linear solving."""
from ._backend import BACKEND
from .context import VariableContext
from .gaussian import I, ONE, ZERO, GaussianRational, as_gaussian
from .linsolve import LinearSolution, solve_linear_exact
from .matrix import PolyMatrix
from .poly import Homogeneity, MultiPoly, is_homogeneous
from .ringmap import RingMap

__all__ = [
    "BACKEND", "GaussianRational", "Homogeneity", "I", "LinearSolution",
    "MultiPoly", "ONE", "PolyMatrix", "RingMap", "VariableContext", "ZERO",
    "as_gaussian", "is_homogeneous", "solve_linear_exact",
]
