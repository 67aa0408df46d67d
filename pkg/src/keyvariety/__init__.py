"""Graded rings of a hyperelliptic curve, K3 surface and Fano 6-fold tower,
with exact verification of their equations."""
from .algebra import (BACKEND, GaussianRational, MultiPoly, PolyMatrix, RingMap,
                      VariableContext, as_gaussian, is_homogeneous,
                      solve_linear_exact)
from .errors import (ContractViolation, DegenerateInput, DomainError, NotEigenvector,
                     RenderError)

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "ContractViolation", "DegenerateInput", "DomainError",
    "GaussianRational", "MultiPoly", "NotEigenvector", "PolyMatrix", "RenderError",
    "RingMap",
    "VariableContext", "as_gaussian", "is_homogeneous", "solve_linear_exact",
]
