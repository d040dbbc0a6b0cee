"""Parameterized control-net families interpolating the canonical triangle.

Three families are built here, all sharing the full dihedral symmetry of the
canonical triangle (rotation by 2pi/3 about the z-axis and the mirror
y -> -y, with the matching barycentric index permutations):

* quadratic nets with one scale parameter alpha on the edge midpoints,
* cubic nets pinned to tangency at the corners, leaving three closed-form
  parameter triples of which only the first is regular,
* quartic nets with one remaining free parameter gamma after the corner
  and edge tangency conditions, in two algebraic branches.

Families carry the bare constant c rather than a polyhedron kind so the
generic-c formulas can be exercised at arbitrary c; kind-specific
constructors are thin wrappers.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .bezier import ControlNet
from .geometry import canonical_vertices, _resolve_c

__all__ = [
    "Branch",
    "QuadraticFamily",
    "CubicFamily",
    "QuarticFamily",
    "quadratic_net",
    "cubic_g1_triples",
    "cubic_vertex_constraint_alpha",
    "cubic_net",
    "quartic_g1_family",
    "quartic_net",
    "net_has_d3_symmetry",
    "infer_quartic_gamma",
]

#: collisions during symmetry completion must agree to this tolerance
SYMMETRY_TIE_TOL = 1e-13

_COS, _SIN = -0.5, math.sqrt(3.0) / 2.0
_ROT_Z = np.array([[_COS, -_SIN, 0.0], [_SIN, _COS, 0.0], [0.0, 0.0, 1.0]])
_MIRROR_Y = np.diag([1.0, -1.0, 1.0])


def _rot_index(idx):
    i, j, k = idx
    return (k, i, j)


def _mirror_index(idx):
    i, j, k = idx
    return (i, k, j)


class Branch(enum.Enum):
    ONE = 1
    TWO = 2


def _complete_by_symmetry(seeds: dict) -> dict:
    """Fill a control net from seed points by the order-6 dihedral group.

    Points landing on an already-filled index (controls on symmetry axes)
    must agree with what is there; disagreement means the seed data breaks
    the symmetry and is a hard error.
    """
    pts = {idx: np.asarray(p, dtype=float) for idx, p in seeds.items()}
    changed = True
    while changed:
        changed = False
        for idx, p in list(pts.items()):
            for op, mapped in ((_ROT_Z, _rot_index(idx)), (_MIRROR_Y, _mirror_index(idx))):
                q = op @ p
                if mapped in pts:
                    if np.max(np.abs(pts[mapped] - q)) > SYMMETRY_TIE_TOL:
                        raise ValueError(
                            f"symmetry completion clash at index {mapped}: "
                            f"{pts[mapped]} vs {q}"
                        )
                else:
                    pts[mapped] = q
                    changed = True
    return pts


def net_has_d3_symmetry(net: ControlNet, tol: float = 1e-12) -> bool:
    """Whether the net is invariant under its triangle's dihedral symmetry."""
    for idx, p in net.items():
        if np.max(np.abs(net.point(*_rot_index(idx)) - _ROT_Z @ p)) > tol:
            return False
        if np.max(np.abs(net.point(*_mirror_index(idx)) - _MIRROR_Y @ p)) > tol:
            return False
    return True


@dataclass(frozen=True)
class QuadraticFamily:
    """Degree-2 vertex-interpolating nets; alpha scales the edge midpoints."""

    c: float
    alpha: float

    def net(self) -> ControlNet:
        v0, v1, v2 = canonical_vertices(self.c)
        a = self.alpha
        seeds = {
            (2, 0, 0): v0,
            (0, 2, 0): v1,
            (0, 0, 2): v2,
            (1, 1, 0): 0.5 * a * (v0 + v1),
        }
        return ControlNet(2, _complete_by_symmetry(seeds))


@dataclass(frozen=True)
class CubicFamily:
    """Degree-3 nets with symmetric edge controls and a central z-control."""

    c: float
    alpha: float
    beta: float
    gamma: float

    def net(self) -> ControlNet:
        v0, v1, v2 = canonical_vertices(self.c)
        a, b, g = self.alpha, self.beta, self.gamma
        seeds = {
            (3, 0, 0): v0,
            (0, 3, 0): v1,
            (0, 0, 3): v2,
            (2, 1, 0): a * v0 + b * v1,
            (1, 1, 1): np.array([0.0, 0.0, g]),
        }
        return ControlNet(3, _complete_by_symmetry(seeds))


@dataclass(frozen=True)
class QuarticFamily:
    """Degree-4 nets; five parameters determined by gamma within a branch."""

    c: float
    alpha: float
    beta: float
    gamma: float
    zeta: float
    xi: float
    branch: Branch = Branch.ONE

    def net(self) -> ControlNet:
        v0, v1, v2 = canonical_vertices(self.c)
        a, b, g = self.alpha, self.beta, self.gamma
        z, x = self.zeta, self.xi
        seeds = {
            (4, 0, 0): v0,
            (0, 4, 0): v1,
            (0, 0, 4): v2,
            (3, 1, 0): a * v0 + b * v1,
            (2, 2, 0): g * (v0 + v1),
            (2, 1, 1): z * v0 + x * (v1 + v2),
        }
        return ControlNet(4, _complete_by_symmetry(seeds))


def quadratic_net(kind_or_c, alpha: float) -> ControlNet:
    """Quadratic family net for a polyhedron kind or bare c."""
    if alpha < 0.0:
        raise ValueError("alpha must be nonnegative")
    return QuadraticFamily(_resolve_c(kind_or_c), alpha).net()


def cubic_vertex_constraint_alpha(c: float, beta: float) -> float:
    """The alpha forced by corner tangency, shared by all cubic triples."""
    return 0.5 * (2.0 - 2.0 * beta + 3.0 * c * c * beta)


def cubic_g1_triples(c: float) -> list[tuple[float, float, float]]:
    """The three closed-form (alpha, beta, gamma) triples with tangent-plane
    continuity along the patch boundaries.

    Only the first triple yields a regular patch; the second and third have
    vanishing normals at a corner and at an edge midpoint respectively.
    """
    c = _resolve_c(c)
    c2 = c * c
    s = math.sqrt(1.0 - c2)
    a1 = (8.0 - 3.0 * c2) / (3.0 * (4.0 - 3.0 * c2))
    b1 = 4.0 / (3.0 * (4.0 - 3.0 * c2))
    g1 = s * (8.0 - 8.0 * c2 + 3.0 * c2 * c2) / (2.0 * (1.0 - c2) * (4.0 - 3.0 * c2))
    a2, b2 = 1.0, 0.0
    g2 = s * (4.0 - 3.0 * c2) / (4.0 * (1.0 - c2))
    a3 = 3.0 * c2 / (4.0 - 3.0 * c2)
    b3 = 4.0 / (4.0 - 3.0 * c2)
    g3 = s * (8.0 - 9.0 * c2 * c2) / (2.0 * (1.0 - c2) * (4.0 - 3.0 * c2))
    return [(a1, b1, g1), (a2, b2, g2), (a3, b3, g3)]


def cubic_net(kind_or_c, triple_index: int) -> ControlNet:
    """Cubic family net from one of the three closed-form triples (1-based)."""
    if triple_index not in (1, 2, 3):
        raise ValueError("triple_index must be 1, 2 or 3")
    c = _resolve_c(kind_or_c)
    a, b, g = cubic_g1_triples(c)[triple_index - 1]
    return CubicFamily(c, a, b, g).net()


def quartic_g1_family(c: float, gamma: float, branch: Branch = Branch.ONE) -> QuarticFamily:
    """Quartic family parameters derived from gamma by the branch formulas.

    Both branches keep tangency at the corners and tangent-plane continuity
    along the boundaries; branch TWO produces strictly worse sphere
    approximants for every gamma but is kept so that claim stays testable.
    """
    c = _resolve_c(c)
    c2 = c * c
    c4, c6 = c2 * c2, c2 * c2 * c2
    g = float(gamma)
    if branch is Branch.ONE:
        a = ((6.0 * c2 - 4.0) * g + c2 + 2.0) / (4.0 * c2)
        b = (2.0 * g - 1.0) / (2.0 * c2)
        z = (-4.0 * (9.0 * c4 - 18.0 * c2 + 8.0) * g + 9.0 * c6 - 24.0 * c4 - 4.0 * c2 + 16.0) / (
            12.0 * c2 * (3.0 * c4 - 7.0 * c2 + 4.0)
        )
        x = (-2.0 * (3.0 * c4 - 3.0 * c2 - 2.0) * g - c2 - 2.0) / (12.0 * c2 * (1.0 - c2))
    elif branch is Branch.TWO:
        a = ((9.0 * c4 - 18.0 * c2 + 8.0) * g - 3.0 * c4 + 10.0 * c2 - 4.0) / (
            c2 * (4.0 - 3.0 * c2)
        )
        b = ((6.0 * c2 - 8.0) * g + 4.0) / (c2 * (4.0 - 3.0 * c2))
        z = ((9.0 * c4 - 18.0 * c2 + 8.0) * g - 3.0 * c4 + 10.0 * c2 - 4.0) / (
            6.0 * c2 * (c2 - 1.0)
        )
        x = ((9.0 * c6 - 30.0 * c4 + 36.0 * c2 - 16.0) * g + 3.0 * c4 - 8.0 * c2 + 8.0) / (
            6.0 * c2 * (3.0 * c4 - 7.0 * c2 + 4.0)
        )
    else:
        raise ValueError(f"unknown branch {branch!r}")
    return QuarticFamily(c, a, b, g, z, x, branch)


def quartic_net(kind_or_c, gamma: float, branch: Branch = Branch.ONE) -> ControlNet:
    return quartic_g1_family(_resolve_c(kind_or_c), gamma, branch).net()


def infer_quartic_gamma(net: ControlNet) -> float:
    """Recover the gamma parameter from a (possibly rotated) quartic net.

    Uses b_220 = gamma (b_400 + b_040), which survives any orthogonal
    transform of the net.
    """
    if net.degree != 4:
        raise ValueError("gamma extraction needs a quartic net")
    m = net.point(4, 0, 0) + net.point(0, 4, 0)
    return float(np.dot(net.point(2, 2, 0), m) / np.dot(m, m))
