"""Radial error functions of a patch and their global extrema on the simplex.

Two error measures are tracked for a patch p: the simplified radial error
f = |p|^2 - 1 (a polynomial) and the true radial error g = |p| - 1.  They
share zeros, extremum locations and monotonicity, but their minimax optima
differ slightly.  The global-extrema search is a dense barycentric grid
followed by projected gradient ascent with exact gradients; for nets with
the full triangle symmetry the grid is restricted to one of the six
median-cut subtriangles, since the error takes the same values on all six.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .bezier import ControlNet, evaluate, _decasteljau
from .families import QuadraticFamily, QuarticFamily, net_has_d3_symmetry
from .geometry import PolyhedronKind

__all__ = [
    "NegativeRadicandError",
    "ErrorReport",
    "radial_errors",
    "extrema_over_delta",
    "equioscillation_residual",
    "quadratic_f_omega",
    "delta_grid",
]

#: |max| and |min| of an error are considered equioscillating below this
EQUIOSCILLATION_TOL = 1e-9

#: refinement stops once the projected gradient drops below this
GRADIENT_TOL = 1e-12


class NegativeRadicandError(ValueError):
    """The patch passes through the origin; |p|^2 - 1 < -1 has no radial error."""


def radial_errors(net: ControlNet, u, v):
    """Simplified and true radial errors (f, g) at (u, v); broadcasts."""
    p = _decasteljau(net, u, v)[0]
    f = np.sum(p * p, axis=-1) - 1.0
    if np.any(f < -1.0):
        raise NegativeRadicandError("patch reaches the origin; malformed net")
    g = np.sqrt(f + 1.0) - 1.0
    return f, g


@dataclass(frozen=True)
class ErrorReport:
    """Global extrema of f and g over the simplex for one net.

    Extremum locations are reported as one representative (u, v); for
    symmetric nets any of the six symmetric images is an equally valid
    location.  ``d_s`` and ``d_r`` are the max-magnitude values of f and g.
    """

    max_f: float
    min_f: float
    max_g: float
    min_g: float
    argmax_f: tuple[float, float]
    argmin_f: tuple[float, float]
    argmax_g: tuple[float, float]
    argmin_g: tuple[float, float]
    d_s: float
    d_r: float
    f_equioscillates: bool
    g_equioscillates: bool

    def to_text(self) -> str:
        pairs = [
            ("max_f", f"{self.max_f:.12g}"),
            ("min_f", f"{self.min_f:.12g}"),
            ("max_g", f"{self.max_g:.12g}"),
            ("min_g", f"{self.min_g:.12g}"),
            ("argmax_f", f"{self.argmax_f[0]:.12g} {self.argmax_f[1]:.12g}"),
            ("argmin_f", f"{self.argmin_f[0]:.12g} {self.argmin_f[1]:.12g}"),
            ("argmax_g", f"{self.argmax_g[0]:.12g} {self.argmax_g[1]:.12g}"),
            ("argmin_g", f"{self.argmin_g[0]:.12g} {self.argmin_g[1]:.12g}"),
            ("d_s", f"{self.d_s:.12g}"),
            ("d_r", f"{self.d_r:.12g}"),
            ("f_equioscillates", str(self.f_equioscillates).lower()),
            ("g_equioscillates", str(self.g_equioscillates).lower()),
        ]
        return "\n".join(f"{k} = {v}" for k, v in pairs) + "\n"


def delta_grid(n: int, restrict_symmetric: bool = False):
    """Lattice points (i/n, j/n) of the simplex, in lexicographic order.

    With ``restrict_symmetric`` only the median-cut subtriangle
    w >= u >= v is kept (boundary included), one fundamental domain of the
    symmetry group action.
    """
    iu, iv = np.meshgrid(np.arange(n + 1), np.arange(n + 1), indexing="ij")
    mask = iu + iv <= n
    if restrict_symmetric:
        iw = n - iu - iv
        mask &= (iw >= iu) & (iu >= iv)
    return iu[mask] / n, iv[mask] / n


def _project_simplex(u: float, v: float) -> tuple[float, float]:
    """Euclidean-ish projection of (u, v) back onto the closed simplex."""
    u, v = max(u, 0.0), max(v, 0.0)
    if u + v > 1.0:
        over = 0.5 * (u + v - 1.0)
        u, v = max(u - over, 0.0), max(v - over, 0.0)
        if u + v > 1.0:
            s = u + v
            u, v = u / s, v / s
    return u, v


def _error_and_gradient(net: ControlNet, u: float, v: float, which: str):
    p, pu, pv, *_ = _decasteljau_derivs(net, u, v)
    f = float(np.dot(p, p)) - 1.0
    gu = 2.0 * float(np.dot(p, pu))
    gv = 2.0 * float(np.dot(p, pv))
    if which == "g":
        r = math.sqrt(f + 1.0)
        return r - 1.0, gu / (2.0 * r), gv / (2.0 * r)
    return f, gu, gv


def _decasteljau_derivs(net: ControlNet, u, v):
    sp = evaluate(net, u, v)
    return sp.position, sp.du, sp.dv, sp.duu, sp.duv, sp.dvv


def _refine_extremum(net: ControlNet, u0, v0, sign: float, which: str,
                     max_iter: int = 400) -> tuple[float, float, float]:
    """Projected gradient ascent of sign*err with step halving.

    Terminates when the gradient falls below ``GRADIENT_TOL`` (interior
    extrema) or the step underflows (extrema pinned to the boundary, where
    the unconstrained gradient need not vanish).
    """
    u, v = float(u0), float(v0)
    val, gu, gv = _error_and_gradient(net, u, v, which)
    val *= sign
    step = 1e-3
    for _ in range(max_iter):
        if math.hypot(gu, gv) < GRADIENT_TOL:
            break
        nu, nv = _project_simplex(u + sign * step * gu, v + sign * step * gv)
        nval, ngu, ngv = _error_and_gradient(net, nu, nv, which)
        nval *= sign
        if nval > val:
            u, v, val, gu, gv = nu, nv, nval, ngu, ngv
            step *= 1.7
        else:
            step *= 0.5
            if step < 1e-16:
                break
    return u, v, sign * val


def extrema_over_delta(net: ControlNet, grid_n: int = 512) -> ErrorReport:
    """Two-stage global extrema search for f and g over the simplex.

    Stage one scans a dense lattice (restricted to one median-cut
    subtriangle when the net has the full triangle symmetry); stage two
    polishes each candidate with projected gradient ascent.  Grid ties go to
    the lexicographically smallest (u, v), keeping the reduction
    deterministic under any evaluation order.
    """
    if grid_n < 64:
        raise ValueError("grid_n must be at least 64")
    restrict = net_has_d3_symmetry(net)
    u, v = delta_grid(grid_n, restrict_symmetric=restrict)
    f, g = radial_errors(net, u, v)

    out = {}
    for which, e in (("f", f), ("g", g)):
        imax, imin = int(np.argmax(e)), int(np.argmin(e))
        uM, vM, M = _refine_extremum(net, u[imax], v[imax], +1.0, which)
        um, vm, m = _refine_extremum(net, u[imin], v[imin], -1.0, which)
        out[which] = (M, m, (uM, vM), (um, vm))

    max_f, min_f, argmax_f, argmin_f = out["f"]
    max_g, min_g, argmax_g, argmin_g = out["g"]
    return ErrorReport(
        max_f=max_f,
        min_f=min_f,
        max_g=max_g,
        min_g=min_g,
        argmax_f=argmax_f,
        argmin_f=argmin_f,
        argmax_g=argmax_g,
        argmin_g=argmin_g,
        d_s=max(abs(max_f), abs(min_f)),
        d_r=max(abs(max_g), abs(min_g)),
        f_equioscillates=abs(abs(max_f) - abs(min_f)) < EQUIOSCILLATION_TOL,
        g_equioscillates=abs(abs(max_g) - abs(min_g)) < EQUIOSCILLATION_TOL,
    )


def _point_error(net: ControlNet, u: float, v: float, which: str) -> float:
    f, g = radial_errors(net, u, v)
    return float(f) if which == "f" else float(g)


def equioscillation_residual(family, which: str = "f",
                             grid_n: Optional[int] = None) -> float:
    """Signed balance whose root defines the minimax-optimal parameter.

    For families whose error peaks at the barycenter this is
    err(1/3,1/3) + err(1/2,1/2).  The quartic icosahedron family peaks on a
    median instead, so there the residual generalizes to (global max) +
    (global min) from the full extrema search.
    """
    if which not in ("f", "g"):
        raise ValueError("which must be 'f' or 'g'")
    net = family.net()
    if isinstance(family, QuarticFamily) and _is_icosahedral_c(family.c):
        rep = extrema_over_delta(net, grid_n or 256)
        if which == "f":
            return rep.max_f + rep.min_f
        return rep.max_g + rep.min_g
    if not isinstance(family, (QuadraticFamily, QuarticFamily)):
        raise TypeError("equioscillation residual applies to the quadratic and quartic families")
    return _point_error(net, 1.0 / 3.0, 1.0 / 3.0, which) + _point_error(net, 0.5, 0.5, which)


def _is_icosahedral_c(c: float) -> bool:
    return abs(c - PolyhedronKind.ICOSAHEDRON.c) < 1e-9


def quadratic_f_omega(c: float, alpha: float, e2, e3):
    """Simplified radial error of the quadratic family written in (e2, e3).

    Matches ``radial_errors`` composed with the symmetric-value map; used to
    cross-check the symmetric-polynomial reduction.
    """
    e2 = np.asarray(e2, dtype=float)
    e3 = np.asarray(e3, dtype=float)
    c2 = c * c
    a = alpha
    f2 = 12.0 * (1.0 - c2) * e3 + (4.0 - 3.0 * c2) * (e2 * e2 - 3.0 * e3)
    f1 = (4.0 - 3.0 * c2) * (e2 - 2.0 * e2 * e2 - 3.0 * e3) + 12.0 * (1.0 - c2) * e3
    f0 = 6.0 * c2 * e3 - 4.0 * e2 + (4.0 - 3.0 * c2) * e2 * e2
    return f2 * a * a + f1 * a + f0
