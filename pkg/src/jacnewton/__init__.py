"""Exact Newton-diagram invariants: Jacobian polygons, Łojasiewicz exponents
and related combinatorics of Newton nondegenerate singularities."""

from .jacobian import aj, jacobian_polygon, lojasiewicz, property_report, w_mixed
from .kn import INF, KNElement, Slope
from .newton import NewtonDiagram, WeightVector
from .triangulate import Simplex, Triangulation, default_triangulation

__version__ = "0.1.0"

__all__ = [
    "INF",
    "KNElement",
    "NewtonDiagram",
    "Simplex",
    "Slope",
    "Triangulation",
    "WeightVector",
    "aj",
    "default_triangulation",
    "jacobian_polygon",
    "lojasiewicz",
    "property_report",
    "w_mixed",
]
