"""Fundamental forms and Gaussian curvature of a patch, with range extraction.

The normal orientation is the normalized du x dv cross product, which points
outward for the canonical nets (positive z at the barycenter); Gaussian
curvature itself does not depend on that choice, but pinning it keeps the
second-form signs reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bezier import ControlNet, evaluate
from .errors import delta_grid
from .families import net_has_d3_symmetry

__all__ = [
    "NonRegularPointError",
    "CurvatureSample",
    "gaussian_curvature",
    "curvature_from_derivatives",
    "curvature_range",
    "round_half_away",
]

#: EG - F^2 below this is treated as a non-regular point
REGULARITY_EPS = 1e-12


class NonRegularPointError(ValueError):
    """First fundamental form is singular; curvature is undefined there."""


@dataclass(frozen=True)
class CurvatureSample:
    u: float
    v: float
    E: float
    F: float
    G: float
    L: float
    M: float
    N: float
    K: float


def curvature_from_derivatives(du, dv, duu, duv, dvv):
    """Gaussian curvature from first/second partials; broadcasts.

    Returns (E, F, G, L, M, N, K); non-regular samples yield NaN curvature
    rather than raising, so vectorized scans can decide how to react.
    """
    du = np.asarray(du, dtype=float)
    dv = np.asarray(dv, dtype=float)
    E = np.sum(du * du, axis=-1)
    F = np.sum(du * dv, axis=-1)
    G = np.sum(dv * dv, axis=-1)
    cross = np.cross(du, dv)
    denom = E * G - F * F
    with np.errstate(divide="ignore", invalid="ignore"):
        normal = cross / np.linalg.norm(cross, axis=-1, keepdims=True)
        L = np.sum(normal * duu, axis=-1)
        M = np.sum(normal * duv, axis=-1)
        N = np.sum(normal * dvv, axis=-1)
        K = np.where(denom > REGULARITY_EPS, (L * N - M * M) / denom, np.nan)
    return E, F, G, L, M, N, K


def gaussian_curvature(net: ControlNet, u: float, v: float) -> CurvatureSample:
    """Fundamental forms and Gaussian curvature at one regular point."""
    sp = evaluate(net, u, v)
    E, F, G, L, M, N, K = curvature_from_derivatives(sp.du, sp.dv, sp.duu, sp.duv, sp.dvv)
    if not np.isfinite(K):
        raise NonRegularPointError(f"EG - F^2 <= {REGULARITY_EPS} at ({u}, {v})")
    return CurvatureSample(float(u), float(v), float(E), float(F), float(G),
                           float(L), float(M), float(N), float(K))


def _curvature_on(net: ControlNet, u, v):
    sp = evaluate(net, u, v)
    return curvature_from_derivatives(sp.du, sp.dv, sp.duu, sp.duv, sp.dvv)[6]


def _zoom_extremum(net: ControlNet, u0: float, v0: float, h0: float,
                   sign: float, rounds: int = 40) -> float:
    """Derivative-free local refinement: shrinking 5x5 pattern search.

    Dense enough for the smooth curvature fields of degree <= 4 nets; the
    returned value is the refined extremum of sign*K.
    """
    u, v, h = u0, v0, h0
    offs = np.array([-1.0, -0.5, 0.0, 0.5, 1.0])
    best = sign * _curvature_on(net, u, v)
    if not np.isfinite(best):
        raise NonRegularPointError(f"non-regular start at ({u0}, {v0})")
    for _ in range(rounds):
        uu = np.clip(u + h * offs[:, None] + 0.0 * offs[None, :], 0.0, 1.0)
        vv = np.clip(v + 0.0 * offs[:, None] + h * offs[None, :], 0.0, 1.0)
        mask = uu + vv <= 1.0
        Ks = sign * _curvature_on(net, uu[mask], vv[mask])
        Ks = np.where(np.isfinite(Ks), Ks, -np.inf)
        i = int(np.argmax(Ks))
        if Ks[i] > best:
            best = float(Ks[i])
            u, v = float(uu[mask][i]), float(vv[mask][i])
        else:
            h *= 0.35
            if h < 1e-12:
                break
    return sign * best


def curvature_range(net: ControlNet, grid_n: int = 512) -> tuple[float, float]:
    """(K_min, K_max) over the simplex by grid scan plus local refinement.

    A non-regular sample anywhere on the grid raises, which is the expected
    outcome for the two singular cubic parameter triples.
    """
    if grid_n < 128:
        raise ValueError("grid_n must be at least 128")
    restrict = net_has_d3_symmetry(net)
    u, v = delta_grid(grid_n, restrict_symmetric=restrict)
    K = _curvature_on(net, u, v)
    if np.any(~np.isfinite(K)):
        bad = int(np.argmax(~np.isfinite(K)))
        raise NonRegularPointError(f"non-regular grid point at ({u[bad]}, {v[bad]})")
    h = 2.0 / grid_n
    imax, imin = int(np.argmax(K)), int(np.argmin(K))
    kmax = _zoom_extremum(net, float(u[imax]), float(v[imax]), h, +1.0)
    kmin = _zoom_extremum(net, float(u[imin]), float(v[imin]), h, -1.0)
    return kmin, kmax


def round_half_away(x: float, decimals: int = 2) -> float:
    """Round half away from zero, the convention of the reference tables."""
    scale = 10.0**decimals
    return np.sign(x) * np.floor(abs(x) * scale + 0.5) / scale
