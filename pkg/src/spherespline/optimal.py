"""Closed-form and iterative solvers for the minimax-optimal family parameters.

Every closed form is cross-validated at test time against an independent
root-finder on its defining balance equation, so a transcription slip in one
of the long radicals cannot survive the suite.  The quartic icosahedron case
has no closed form for either error measure; it is solved by bisection on
the balance of global max against global min, exactly the procedure the
monotonicity of the error in gamma justifies, and double-checked by a damped
Newton solve of the boundary-maximum system.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .bezier import evaluate
from .errors import extrema_over_delta
from .families import (
    Branch,
    QuadraticFamily,
    CubicFamily,
    QuarticFamily,
    cubic_g1_triples,
    quartic_g1_family,
)
from .geometry import PolyhedronKind, _resolve_c

__all__ = [
    "Measure",
    "Provenance",
    "OptimalSolution",
    "quadratic_optimal",
    "cubic_optimal",
    "quartic_optimal",
    "quartic_branch_two_inferior",
    "optimal_solution",
    "optimal_family",
    "icosahedron_gamma_bracket",
    "icosahedron_quartic_newton",
]


class Measure(enum.Enum):
    SIMPLIFIED = "simplified"   # minimax of | |p|^2 - 1 |
    RADIAL = "radial"           # minimax of | |p| - 1 |

    @classmethod
    def parse(cls, name: str) -> "Measure":
        name = name.strip().lower()
        for m in cls:
            if m.value.startswith(name) and name:
                return m
        raise ValueError(f"unknown measure {name!r}")


class Provenance(enum.Enum):
    CLOSED_FORM = "closed-form"
    BISECTION = "bisection"


@dataclass(frozen=True)
class OptimalSolution:
    kind: PolyhedronKind
    degree: int
    smoothness: str
    measure: Measure
    params: dict[str, float]
    d_r: float
    provenance: Provenance
    extremum_location: tuple[float, float] | None = field(default=None)

    def summary(self) -> str:
        lines = [
            f"kind = {self.kind.value}",
            f"degree = {self.degree}",
            f"smoothness = {self.smoothness}",
            f"measure = {self.measure.value}",
            f"provenance = {self.provenance.value}",
        ]
        for name, val in self.params.items():
            lines.append(f"{name} = {val:.12g}")
        lines.append(f"d_r = {self.d_r:.12g}")
        if self.extremum_location is not None:
            u, v = self.extremum_location
            lines.append(f"extremum_uv = {u:.12g} {v:.12g}")
        return "\n".join(lines) + "\n"


def quadratic_optimal(c: float, measure: Measure = Measure.SIMPLIFIED) -> float:
    """Optimal quadratic midpoint scale for the requested error measure."""
    c = _resolve_c(c)
    c2 = c * c
    if measure is Measure.SIMPLIFIED:
        return (68.0 - 59.0 * c2 - 12.0 * math.sqrt(196.0 - 175.0 * c2 - 3.0 * c2 * c2)) / (
            91.0 * c2 - 100.0
        )
    r1 = math.sqrt(4.0 - 3.0 * c2)
    r2 = math.sqrt(1.0 - c2)
    return (24.0 - 3.0 * r1 - 4.0 * r2) / (3.0 * r1 + 8.0 * r2)


def quadratic_g1_candidate(c: float) -> float:
    """The only midpoint scale with radial corner normals; never optimal for
    the Platonic c values, which is why no quadratic spline is tangent-plane
    continuous."""
    c = _resolve_c(c)
    return 4.0 / (4.0 - 3.0 * c * c)


def cubic_optimal(c: float) -> tuple[float, float, float]:
    """The unique regular tangent-plane-continuous cubic triple."""
    return cubic_g1_triples(_resolve_c(c))[0]


# -- quartic closed forms ---------------------------------------------------

def _gamma_tetra(measure: Measure) -> float:
    if measure is Measure.SIMPLIFIED:
        return (2189.0 + 108.0 * math.sqrt(2291.0)) / 7602.0
    return (9587.0 - 2916.0 * math.sqrt(3.0)) / 4686.0


def _gamma_octa(measure: Measure) -> float:
    if measure is Measure.SIMPLIFIED:
        return (47.0 + 36.0 * math.sqrt(974.0)) / 1510.0
    return (209.0 + 768.0 * math.sqrt(3.0) - 12.0 * math.sqrt(6126.0 + 1512.0 * math.sqrt(3.0))) / 538.0


def tetra_branch_two_crossover() -> float:
    """Gamma where the two tetrahedral branch-TWO bounding cases swap."""
    return (22229.0 - 216.0 * math.sqrt(2291.0)) / 7602.0


def icosahedron_gamma_bracket() -> tuple[float, float, float]:
    """(gamma_0, gamma_1, gamma_2): bisection upper end and the closed-form
    interval that pins the optimum.

    gamma_0 balances the barycenter against the edge midpoint, gamma_1 and
    gamma_2 are the zeros of the error at those two points; the optimum lies
    in [gamma_1, gamma_2] strictly inside [1/2, gamma_0].
    """
    r5 = math.sqrt(5.0)
    g0 = (-1931.0 - 1100.0 * r5 + 18.0 * math.sqrt(6.0 * (556615.0 + 248877.0 * r5))) / (
        6.0 * (5771.0 + 2508.0 * r5)
    )
    g1 = (29.0 - 13.0 * r5 + 9.0 * math.sqrt(6.0 * (5.0 + r5))) / 96.0
    g2 = (-1.0 + 2.0 * math.sqrt(10.0 - 2.0 * r5)) / 6.0
    return g0, g1, g2


class BisectionError(RuntimeError):
    """The bracket did not straddle the balance sign change; family/metric bug."""


def _bisect_icosa_gamma(measure: Measure, tol: float = 1e-12,
                        grid_n: int = 256, max_iter: int = 60):
    """Bisection on gamma balancing global max against |global min|."""
    c = PolyhedronKind.ICOSAHEDRON.c
    which = "f" if measure is Measure.SIMPLIFIED else "g"
    g0, _, _ = icosahedron_gamma_bracket()
    lo, hi = 0.5, g0

    def excess(gamma: float) -> float:
        rep = extrema_over_delta(quartic_g1_family(c, gamma).net(), grid_n)
        if which == "f":
            return rep.max_f + rep.min_f
        return rep.max_g + rep.min_g

    if not (excess(lo) < 0.0 < excess(hi)):
        raise BisectionError("gamma bracket does not straddle the balance root")
    iters = 0
    while hi - lo >= tol and iters < max_iter:
        mid = 0.5 * (lo + hi)
        if excess(mid) > 0.0:
            hi = mid
        else:
            lo = mid
        iters += 1
    if hi - lo >= tol:
        raise BisectionError("bisection failed to reach the requested interval width")
    return 0.5 * (lo + hi), iters


def icosahedron_quartic_newton(seed: tuple[float, float] = (0.14, 0.617),
                               tol: float = 1e-13, max_iter: int = 80):
    """Damped Newton solve of the icosahedral boundary-maximum system.

    Unknowns (u, gamma) satisfy f(u,u,gamma) = -f(1/2,0,gamma) and
    d/du f(u,u,gamma) = 0 with a concavity check; the Jacobian uses exact
    patch derivatives, and the gamma direction exploits that the net depends
    affinely on gamma.
    """
    from .bezier import ControlNet

    c = PolyhedronKind.ICOSAHEDRON.c
    net0 = quartic_g1_family(c, 0.0).net()
    net1 = quartic_g1_family(c, 1.0).net()
    dnet = ControlNet(4, dict(zip(net0.indices, net1.coords - net0.coords)))

    def state(u: float, v: float, gamma: float):
        s0 = evaluate(net0, u, v)
        sd = evaluate(dnet, u, v)
        p = s0.position + gamma * sd.position
        pu = s0.du + gamma * sd.du
        pv = s0.dv + gamma * sd.dv
        puu = s0.duu + gamma * sd.duu
        puv = s0.duv + gamma * sd.duv
        pvv = s0.dvv + gamma * sd.dvv
        return p, pu, pv, puu, puv, pvv, sd

    def median_curvature(u: float, gamma: float) -> float:
        p, pu, pv, puu, puv, pvv, _ = state(u, u, gamma)
        return 2.0 * float(np.dot(pu + pv, pu + pv) + np.dot(p, puu + 2 * puv + pvv))

    def system(u: float, gamma: float):
        # F1 = f(u,u) + f(1/2,0);  F2 = (f_u + f_v)(u,u)
        p, pu, pv, puu, puv, pvv, sd = state(u, u, gamma)
        q, qu, qv = sd.position, sd.du, sd.dv
        f_here = float(np.dot(p, p)) - 1.0
        along = 2.0 * float(np.dot(p, pu) + np.dot(p, pv))
        f_gamma = 2.0 * float(np.dot(p, q))
        along_u = median_curvature(u, gamma)
        along_gamma = 2.0 * float(np.dot(q, pu + pv) + np.dot(p, qu + qv))

        pm, *_unused, sdm = state(0.5, 0.0, gamma)
        f_mid = float(np.dot(pm, pm)) - 1.0
        f_mid_gamma = 2.0 * float(np.dot(pm, sdm.position))

        F = np.array([f_here + f_mid, along])
        J = np.array([[along, f_gamma + f_mid_gamma], [along_u, along_gamma]])
        return F, J

    u, gamma = seed
    for _ in range(max_iter):
        F, J = system(u, gamma)
        if np.max(np.abs(F)) < tol:
            break
        step = np.linalg.solve(J, -F)
        lam, base = 1.0, float(np.max(np.abs(F)))
        while lam > 1e-8:
            nu, ng = u + lam * step[0], gamma + lam * step[1]
            if float(np.max(np.abs(system(nu, ng)[0]))) < base:
                u, gamma = nu, ng
                break
            lam *= 0.5
        else:
            break
    if median_curvature(u, gamma) >= 0.0:
        raise RuntimeError("median stationary point is not a maximum")
    return u, gamma


def quartic_optimal(kind: PolyhedronKind, measure: Measure = Measure.RADIAL,
                    grid_n: int = 256) -> OptimalSolution:
    """Optimal branch-ONE quartic for the kind and measure.

    Tetrahedron and octahedron use the printed closed forms; the icosahedron
    runs the bisection (with the Newton solve available as a cross-check).
    """
    c = kind.c
    if kind is PolyhedronKind.TETRAHEDRON:
        gamma, prov = _gamma_tetra(measure), Provenance.CLOSED_FORM
    elif kind is PolyhedronKind.OCTAHEDRON:
        gamma, prov = _gamma_octa(measure), Provenance.CLOSED_FORM
    else:
        gamma, _ = _bisect_icosa_gamma(measure, grid_n=grid_n)
        prov = Provenance.BISECTION
    fam = quartic_g1_family(c, gamma)
    rep = extrema_over_delta(fam.net(), max(grid_n, 256))
    return OptimalSolution(
        kind=kind,
        degree=4,
        smoothness="G1",
        measure=measure,
        params={"alpha": fam.alpha, "beta": fam.beta, "gamma": fam.gamma,
                "zeta": fam.zeta, "xi": fam.xi},
        d_r=rep.d_r,
        provenance=prov,
        extremum_location=rep.argmax_f,
    )


def quartic_branch_two_inferior(kind: PolyhedronKind, step: float = 1e-3,
                                gamma_max: float = 3.0) -> bool:
    """Whether branch TWO is strictly worse than the branch-ONE optimum.

    Sweeps gamma and compares a cheap lower bound of the branch-TWO
    simplified error (probes at the barycenter, edge midpoint, and dense
    boundary/median samples) against the branch-ONE optimal value; any gamma
    where the bound is not already decisive falls back to the full search.
    """
    if kind is PolyhedronKind.ICOSAHEDRON:
        raise ValueError("the sweep argument is made for the tetrahedron and octahedron")
    c = kind.c
    opt = quartic_optimal(kind, Measure.SIMPLIFIED)
    net_opt = quartic_g1_family(c, opt.params["gamma"]).net()
    d_s_opt = extrema_over_delta(net_opt, 256).d_s

    # probe points: the two balance points plus boundary and median samples
    edge = np.linspace(0.0, 1.0, 33)
    med = np.linspace(0.0, 0.5, 33)
    pts_u = np.concatenate(([1.0 / 3.0, 0.5], edge, med))
    pts_v = np.concatenate(([1.0 / 3.0, 0.5], np.zeros_like(edge), med))

    net0 = quartic_g1_family(c, 0.0, Branch.TWO).net()
    net1 = quartic_g1_family(c, 1.0, Branch.TWO).net()
    a = evaluate(net0, pts_u, pts_v).position
    b = evaluate(net1, pts_u, pts_v).position - a

    gammas = np.arange(0.0, gamma_max + 0.5 * step, step)
    # f(probe, gamma) = |a + gamma b|^2 - 1, vectorized over both axes
    aa = np.sum(a * a, axis=-1)
    ab = np.sum(a * b, axis=-1)
    bb = np.sum(b * b, axis=-1)
    f = (aa[None, :] - 1.0) + 2.0 * gammas[:, None] * ab[None, :] + (gammas[:, None] ** 2) * bb[None, :]
    lower_bound = np.max(np.abs(f), axis=1)

    undecided = np.nonzero(lower_bound <= d_s_opt)[0]
    for i in undecided:
        rep = extrema_over_delta(quartic_g1_family(c, float(gammas[i]), Branch.TWO).net(), 128)
        if rep.d_s <= d_s_opt:
            return False
    return True


# -- one-stop constructor used by the CLI and the assembly -------------------

def optimal_family(kind: PolyhedronKind, degree: int,
                   measure: Measure = Measure.RADIAL):
    """The optimal family object for a kind/degree/measure combination."""
    c = kind.c
    if degree == 2:
        return QuadraticFamily(c, quadratic_optimal(c, measure))
    if degree == 3:
        a, b, g = cubic_optimal(c)
        return CubicFamily(c, a, b, g)
    if degree == 4:
        sol = quartic_optimal(kind, measure)
        p = sol.params
        return QuarticFamily(c, p["alpha"], p["beta"], p["gamma"], p["zeta"], p["xi"])
    raise ValueError("degree must be 2, 3 or 4")


def optimal_solution(kind: PolyhedronKind, degree: int,
                     measure: Measure = Measure.RADIAL,
                     grid_n: int = 512) -> OptimalSolution:
    """Full solution record (params, d_r, provenance) for one table row."""
    if degree == 4:
        sol = quartic_optimal(kind, measure, grid_n=min(grid_n, 256))
        rep = extrema_over_delta(quartic_g1_family(kind.c, sol.params["gamma"]).net(), grid_n)
        return OptimalSolution(kind, 4, "G1", measure, sol.params, rep.d_r,
                               sol.provenance, rep.argmax_f)
    if degree == 3:
        a, b, g = cubic_optimal(kind.c)
        rep = extrema_over_delta(CubicFamily(kind.c, a, b, g).net(), grid_n)
        return OptimalSolution(kind, 3, "G1", measure,
                               {"alpha": a, "beta": b, "gamma": g},
                               rep.d_r, Provenance.CLOSED_FORM, rep.argmax_f)
    if degree == 2:
        alpha = quadratic_optimal(kind.c, measure)
        rep = extrema_over_delta(QuadraticFamily(kind.c, alpha).net(), grid_n)
        return OptimalSolution(kind, 2, "G0", measure, {"alpha": alpha},
                               rep.d_r, Provenance.CLOSED_FORM, rep.argmax_f)
    raise ValueError("degree must be 2, 3 or 4")
