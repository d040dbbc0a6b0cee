"""Canonical equilateral spherical triangle and the symmetric-polynomial domain.

The canonical triangle sits on the unit sphere with its mass point at the
north pole (0, 0, 1).  Its shape is controlled by a single constant
c = cos(psi) in (0, 1); the three Platonic triangulations of the sphere
(tetrahedron, octahedron, icosahedron) correspond to particular values of c.

Error polynomials on the barycentric simplex that are symmetric in
(u, v, w = 1-u-v) can be rewritten in the elementary symmetric values
(e2, e3) = (uv+uw+vw, uvw).  The image of the simplex under that map is a
curved region Omega whose boundary is reached exactly by the simplex
boundary and its medians, which localizes extrema of symmetric errors.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "PolyhedronKind",
    "SphericalTriangle",
    "canonical_vertices",
    "canonical_triangle",
    "to_omega",
    "omega_bounds",
    "in_omega",
    "in_delta",
    "symmetric_images",
]

#: absolute tolerance for membership in Omega (the bound expressions lose
#: about two digits near e2 = 1/3)
OMEGA_TOL = 1e-12


class PolyhedronKind(enum.Enum):
    """The three polyhedra whose spherical triangulations are equilateral."""

    TETRAHEDRON = "tetrahedron"
    OCTAHEDRON = "octahedron"
    ICOSAHEDRON = "icosahedron"

    @property
    def c(self) -> float:
        """Cosine of the circumradius angle of one spherical triangle."""
        if self is PolyhedronKind.TETRAHEDRON:
            return 2.0 * math.sqrt(2.0) / 3.0
        if self is PolyhedronKind.OCTAHEDRON:
            return math.sqrt(6.0) / 3.0
        return math.sqrt(2.0 * (5.0 - math.sqrt(5.0)) / 15.0)

    @property
    def face_count(self) -> int:
        return {"tetrahedron": 4, "octahedron": 8, "icosahedron": 20}[self.value]

    @property
    def vertex_valence(self) -> int:
        """Number of triangles meeting at each triangulation vertex."""
        return {"tetrahedron": 3, "octahedron": 4, "icosahedron": 5}[self.value]

    @classmethod
    def parse(cls, name: str) -> "PolyhedronKind":
        """Accepts full names or the short forms tetra/octa/icosa."""
        name = name.strip().lower()
        for kind in cls:
            if kind.value.startswith(name) and len(name) >= 4:
                return kind
        raise ValueError(f"unknown polyhedron kind: {name!r}")


def _resolve_c(kind_or_c) -> float:
    if isinstance(kind_or_c, PolyhedronKind):
        return kind_or_c.c
    c = float(kind_or_c)
    if not 0.0 < c < 1.0:
        raise ValueError(f"c must lie in (0, 1), got {c}")
    return c


@dataclass(frozen=True)
class SphericalTriangle:
    """Equilateral spherical triangle with mass point at (0, 0, 1)."""

    v0: np.ndarray
    v1: np.ndarray
    v2: np.ndarray
    c: float

    def __post_init__(self):
        for v in (self.v0, self.v1, self.v2):
            v.setflags(write=False)
            if abs(np.linalg.norm(v) - 1.0) > 1e-14:
                raise ValueError("triangle vertex is not on the unit sphere")

    @property
    def vertices(self) -> np.ndarray:
        """Vertices stacked as rows (3, 3)."""
        return np.array([self.v0, self.v1, self.v2])


def canonical_vertices(c: float) -> np.ndarray:
    """Vertices of the canonical triangle as rows, for a bare constant c."""
    c = _resolve_c(c)
    s = math.sqrt(1.0 - c * c)
    h = math.sqrt(3.0) / 2.0
    return np.array(
        [
            [c, 0.0, s],
            [-0.5 * c, h * c, s],
            [-0.5 * c, -h * c, s],
        ]
    )


def canonical_triangle(kind_or_c) -> SphericalTriangle:
    """Canonical triangle for a :class:`PolyhedronKind` or a bare c value."""
    c = _resolve_c(kind_or_c)
    v = canonical_vertices(c)
    return SphericalTriangle(v[0].copy(), v[1].copy(), v[2].copy(), c)


def in_delta(u, v, eps: float = 0.0):
    """Membership in the barycentric simplex, fattened by eps in each bound."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    return (u >= -eps) & (v >= -eps) & (u + v <= 1.0 + eps)


def to_omega(u, v):
    """Map a simplex point to its elementary symmetric values (e2, e3).

    Accepts scalars or arrays; w = 1-u-v is implied.  Degenerate inputs with
    w = 0 are fine and land on e3 = 0.
    """
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    w = 1.0 - u - v
    e2 = u * v + u * w + v * w
    e3 = u * v * w
    return e2, e3


def omega_bounds(e2):
    """Lower and upper e3 bounds of Omega at a given e2 in [0, 1/3].

    Returns the raw closed-form bounds; for small e2 the lower bound is
    negative even though Omega lives in the closed first quadrant, so
    membership tests clamp it at zero (see :func:`in_omega`).
    """
    e2 = np.asarray(e2, dtype=float)
    if np.any(e2 < -OMEGA_TOL) or np.any(e2 > 1.0 / 3.0 + OMEGA_TOL):
        raise ValueError("e2 outside [0, 1/3]")
    root = np.sqrt(np.maximum(1.0 - 3.0 * e2, 0.0))
    lo = (9.0 * e2 - 2.0 - (2.0 - 6.0 * e2) * root) / 27.0
    hi = (9.0 * e2 - 2.0 + (2.0 - 6.0 * e2) * root) / 27.0
    return lo, hi


def in_omega(e2, e3, tol: float = OMEGA_TOL):
    """Membership in Omega (first quadrant, lower bound clamped at 0)."""
    e2 = np.asarray(e2, dtype=float)
    e3 = np.asarray(e3, dtype=float)
    inside = (e2 >= -tol) & (e2 <= 1.0 / 3.0 + tol) & (e3 >= -tol)
    lo, hi = omega_bounds(np.clip(e2, 0.0, 1.0 / 3.0))
    return inside & (e3 >= np.maximum(lo, 0.0) - tol) & (e3 <= hi + tol)


def symmetric_images(u: float, v: float) -> np.ndarray:
    """The six (u, v) images of a simplex point under permuting (u, v, w).

    Error functions of the symmetric patch families take equal values on all
    six, so extremum locations are only meaningful up to this orbit.
    """
    w = 1.0 - u - v
    coords = (u, v, w)
    perms = [(0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)]
    return np.array([[coords[p[0]], coords[p[1]]] for p in perms])
