"""Williamson decomposition from submatrix determinants."""

from .baseline import decompose_baseline
from .degenerate import PerturbPlan, decompose_perturbed, make_plan
from .detdiag import DetOptions, decompose_det
from .errors import SympdetError
from .indefinite import NotDiagonalizable, decompose_indefinite, signed_spectrum
from .sympbase import (
    WilliamsonDecomp,
    convert_ordering,
    gauge_distance,
    omega,
    random_covariance,
    random_symplectic,
)
from .sympeig import symplectic_eigenvalues

__all__ = [
    "DetOptions",
    "NotDiagonalizable",
    "PerturbPlan",
    "SympdetError",
    "WilliamsonDecomp",
    "convert_ordering",
    "decompose_baseline",
    "decompose_det",
    "decompose_indefinite",
    "decompose_perturbed",
    "gauge_distance",
    "make_plan",
    "omega",
    "random_covariance",
    "random_symplectic",
    "signed_spectrum",
    "symplectic_eigenvalues",
]
