"""Geometric multigrid preconditioners for the indefinite 2-D Helmholtz equation.

Three V-cycle variants (Helmholtz, shifted Laplacian, hybrid) are provided as
right preconditioners for Bi-CGSTAB, plus closed-form Fourier tools for the
per-scale symbol and Gauss-Seidel smoothing comparisons.
"""

from helmmg.field import (
    ComplexField,
    GridGeom,
    WaveNumberField,
    WedgeGeometry,
    constant_medium,
    make_grid,
    point_source,
    wedge_medium,
)
from helmmg.operators import DiscreteOperator, apply, assemble, residual
from helmmg.mgcycle import Hierarchy, Variant, WorkReport, build_hierarchy, precondition, vcycle
from helmmg.krylov import SolveReport, bicgstab

__all__ = [
    "ComplexField",
    "DiscreteOperator",
    "GridGeom",
    "Hierarchy",
    "SolveReport",
    "Variant",
    "WaveNumberField",
    "WedgeGeometry",
    "WorkReport",
    "apply",
    "assemble",
    "bicgstab",
    "build_hierarchy",
    "constant_medium",
    "make_grid",
    "point_source",
    "precondition",
    "residual",
    "vcycle",
    "wedge_medium",
]
