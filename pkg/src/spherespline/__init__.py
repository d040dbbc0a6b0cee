"""Optimal triangular Bezier spline approximations of the unit sphere.

The package builds parametric polynomial patches over the equilateral
spherical triangles of the tetrahedral, octahedral and icosahedral
triangulations, solves for the minimax-optimal free parameters of the
quadratic, cubic and quartic families, certifies the geometric continuity of
the assembled spline spheres, and exports meshes with curvature channels.
"""

__version__ = "0.1.0"

from .geometry import PolyhedronKind, canonical_triangle, to_omega, omega_bounds
from .bezier import ControlNet, bernstein, evaluate, elevate_degree
from .families import (
    Branch,
    QuadraticFamily,
    CubicFamily,
    QuarticFamily,
    quadratic_net,
    cubic_net,
    cubic_g1_triples,
    quartic_g1_family,
    quartic_net,
)
from .errors import ErrorReport, radial_errors, extrema_over_delta, equioscillation_residual
from .optimal import (
    Measure,
    OptimalSolution,
    quadratic_optimal,
    cubic_optimal,
    quartic_optimal,
    optimal_family,
    optimal_solution,
)
from .continuity import (
    AdjoinedPair,
    ContinuityCertificate,
    reflection_matrix,
    check_g1,
    check_g2_via_curve,
    check_vertex_ring,
    cubic_transversal,
    quartic_transversal,
)
from .curvature import CurvatureSample, gaussian_curvature, curvature_range
from .assembly import SphereSpline, build_sphere, certify_sphere, export_mesh, audit_mesh

__all__ = [
    "PolyhedronKind",
    "canonical_triangle",
    "to_omega",
    "omega_bounds",
    "ControlNet",
    "bernstein",
    "evaluate",
    "elevate_degree",
    "Branch",
    "QuadraticFamily",
    "CubicFamily",
    "QuarticFamily",
    "quadratic_net",
    "cubic_net",
    "cubic_g1_triples",
    "quartic_g1_family",
    "quartic_net",
    "ErrorReport",
    "radial_errors",
    "extrema_over_delta",
    "equioscillation_residual",
    "Measure",
    "OptimalSolution",
    "quadratic_optimal",
    "cubic_optimal",
    "quartic_optimal",
    "optimal_family",
    "optimal_solution",
    "AdjoinedPair",
    "ContinuityCertificate",
    "reflection_matrix",
    "check_g1",
    "check_g2_via_curve",
    "check_vertex_ring",
    "cubic_transversal",
    "quartic_transversal",
    "CurvatureSample",
    "gaussian_curvature",
    "curvature_range",
    "SphereSpline",
    "build_sphere",
    "certify_sphere",
    "export_mesh",
    "audit_mesh",
]
