"""Numerical certification of geometric continuity across glued patches.

Two patches that share the boundary curve c(tau) = p1(0,tau) = p2(0,tau)
form a visually smooth surface of order k when through every boundary point
there runs a transversal curve whose one-sided derivative stacks match up to
the lower-triangular reparameterization system

    (gamma_2^(j)(0))_j = M_k (gamma_1^(j)(0))_j,    diag(M_k) = alpha_1^j,

with alpha_1 > 0.  Order 1 reduces to coincident tangent planes, checked
directly through normals.  Order 2 is certified constructively: explicit
transversal curves with closed-form second-order reparameterization
coefficients are instantiated for the cubic and quartic families, their
one-sided derivatives are computed by exact chain rule from the patch
partials, and the 2x2 triangular system is solved in least squares; the
leftover residual is the certificate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .bezier import ControlNet, evaluate
from .geometry import canonical_vertices

__all__ = [
    "G0_TOL",
    "G1_TOL",
    "G2_TOL",
    "reflection_matrix",
    "AdjoinedPair",
    "ContinuityCertificate",
    "TransversalCurve",
    "cubic_transversal",
    "quartic_transversal",
    "tau_samples",
    "check_g0",
    "check_g1",
    "check_g2_via_curve",
    "check_vertex_ring",
    "canonicalize_pair",
    "mk_matrix",
    "solve_reparam_system",
]

G0_TOL = 1e-13
G1_TOL = 1e-10
G2_TOL = 1e-8

#: how far past [0, 1] the boundary parameter is sampled
EDGE_OVERHANG = 0.05


def reflection_matrix(c: float) -> np.ndarray:
    """Reflection over the plane through the origin and the canonical
    triangle's second and third vertices.

    Maps the canonical patch onto its mirror neighbour across that edge; the
    matrix is orthogonal with determinant -1 and fixes the shared boundary
    pointwise.
    """
    c2 = c * c
    s = math.sqrt(1.0 - c2)
    d = 3.0 * c2 - 4.0
    return np.array(
        [
            [(4.0 - 5.0 * c2) / d, 0.0, 4.0 * c * s / d],
            [0.0, 1.0, 0.0],
            [4.0 * c * s / d, 0.0, (4.0 - 5.0 * c2) / (4.0 - 3.0 * c2)],
        ]
    )


@dataclass(frozen=True)
class ContinuityCertificate:
    level: str
    samples: tuple[tuple[float, float], ...]
    max_residual: float
    passed: bool
    reason: Optional[str] = None
    label: Optional[str] = None

    def summary(self) -> str:
        head = f"{self.level} {'PASS' if self.passed else 'FAIL'} max_residual={self.max_residual:.6g}"
        if self.label:
            head = f"[{self.label}] " + head
        if self.reason:
            head += f" ({self.reason})"
        return head


@dataclass(frozen=True)
class AdjoinedPair:
    """Two nets glued along their u=0 edges: c(tau) = p1(0,tau) = p2(0,tau).

    ``symmetric`` records whether net2 is the reflection of net1 over the
    plane through the origin and the shared edge, the configuration every
    sphere gluing reduces to; only then does the radial tangent-plane test
    apply on top of the plain normal comparison.
    """

    net1: ControlNet
    net2: ControlNet
    c: float
    symmetric: bool = field(default=False)

    @staticmethod
    def make(net1: ControlNet, net2: ControlNet, c: float) -> "AdjoinedPair":
        sym = net2.degree == net1.degree and net1.transform(
            reflection_matrix(c)
        ).max_distance(net2) < 1e-10
        return AdjoinedPair(net1, net2, c, sym)

    @property
    def reflection(self) -> np.ndarray:
        return reflection_matrix(self.c)

    def boundary_plane_normal(self) -> np.ndarray:
        """Unit normal of the plane through the origin and the shared edge."""
        a = evaluate(self.net1, 0.0, 0.0).position
        b = evaluate(self.net1, 0.0, 1.0).position
        n = np.cross(a, b)
        return n / np.linalg.norm(n)


def tau_samples(n: int = 101, overhang: float = EDGE_OVERHANG) -> np.ndarray:
    """Uniform boundary samples plus the three interior Chebyshev extremal
    points and one sample a half-overhang beyond each end of [0, 1]."""
    base = np.linspace(0.0, 1.0, n)
    cheb = 0.5 * (1.0 + np.cos(np.array([1, 2, 3]) * np.pi / 4.0))
    beyond = np.array([-0.5 * overhang, 1.0 + 0.5 * overhang])
    return np.unique(np.concatenate([base, cheb, beyond]))


def check_g0(pair: AdjoinedPair, samples: int = 101,
             label: Optional[str] = None) -> ContinuityCertificate:
    taus = tau_samples(samples)
    gap = np.linalg.norm(
        evaluate(pair.net1, 0.0, taus).position - evaluate(pair.net2, 0.0, taus).position,
        axis=-1,
    )
    worst = float(np.max(gap))
    return ContinuityCertificate(
        "G0", tuple(zip(taus.tolist(), gap.tolist())), worst, worst < G0_TOL, None, label
    )


def check_g1(pair: AdjoinedPair, samples: int = 101,
             label: Optional[str] = None) -> ContinuityCertificate:
    """Tangent-plane coincidence along the shared boundary.

    The residual at each tau is the cross product of the two unit normals;
    for symmetric gluings the radial criterion is added: the common normal
    must be perpendicular to the normal of the plane through the boundary
    and the origin.
    """
    g0 = check_g0(pair, samples, label)
    if not g0.passed:
        return ContinuityCertificate("G1", g0.samples, g0.max_residual, False,
                                     "pair is not even G0", label)
    taus = tau_samples(samples)
    s1 = evaluate(pair.net1, 0.0, taus)
    s2 = evaluate(pair.net2, 0.0, taus)
    if bool(np.any(s1.degenerate)) or bool(np.any(s2.degenerate)):
        return ContinuityCertificate("G1", (), math.inf, False,
                                     "degenerate normal on the boundary", label)
    res = np.linalg.norm(np.cross(s1.normal, s2.normal), axis=-1)
    if pair.symmetric:
        m = pair.boundary_plane_normal()
        res = np.maximum(res, np.abs(s1.normal @ m))
        res = np.maximum(res, np.abs(s2.normal @ m))
    worst = float(np.max(res))
    return ContinuityCertificate(
        "G1", tuple(zip(taus.tolist(), res.tolist())), worst, worst < G1_TOL, None, label
    )


# -- transversal curves for the order-2 certificates --------------------------

@dataclass(frozen=True)
class TransversalCurve:
    """Second-order data of the transversal curve family gamma_v.

    The curve runs as p1(-t, v) for t <= 0 and p2(phi(t), psi(t)) for
    t >= 0 with phi(0) = 0, psi(0) = v; ``coefficients(v)`` returns
    (phi'(0), phi''(0), psi'(0), psi''(0)).
    """

    coefficients: Callable[[float], tuple[float, float, float, float]]


def cubic_transversal(c: float) -> TransversalCurve:
    """Transversal curve family certifying the optimal cubic gluing."""
    c2 = c * c
    c4 = c2 * c2

    def coeff(v: float):
        den = 4.0 - 4.0 * c2 + 3.0 * c4 * (1.0 - v) * v
        dphi = 1.0
        ddphi = 2.0 * 6.0 * c2 * (4.0 - 5.0 * c2 + 6.0 * c4 * (1.0 - v) * v) / (
            (4.0 - 3.0 * c2) * den
        )
        dpsi = (6.0 * c2 * (1.0 - v) - 4.0) / (4.0 - 3.0 * c2)
        ddpsi = 2.0 * 6.0 * c4 * (
            2.0 + 9.0 * c4 * (1.0 - v) ** 2 * v - 3.0 * c2 * (1.0 + v - 2.0 * v * v)
        ) / ((4.0 - 3.0 * c2) ** 2 * den)
        return dphi, ddphi, dpsi, ddpsi

    return TransversalCurve(coeff)


def quartic_transversal(c: float, gamma: float) -> TransversalCurve:
    """Transversal curve family certifying the quartic gluing.

    Well defined for gamma > 3/5, which covers all three optimal values.
    """
    c2 = c * c
    c4, c6 = c2 * c2, c2 * c2 * c2
    g = gamma

    def coeff(v: float):
        dphi, ddphi = 1.0, 0.0
        dpsi = 2.0 * (2.0 - 3.0 * c2 + 3.0 * c2 * v) / (3.0 * c2 - 4.0)
        num = 2.0 * (
            27.0 * c6 * (1.0 - v) ** 2 * v
            - 16.0
            - 6.0 * c2 * (4.0 * v - 7.0)
            + 9.0 * c4 * (2.0 * v * v + v - 3.0)
        ) * (2.0 + c2 - 4.0 * g)
        den = (4.0 - 3.0 * c2) ** 2 * (
            6.0 * c4 * (v - 1.0) * v * g
            + 2.0 * (2.0 * v * v - 2.0 * v + 1.0) * (2.0 * g - 1.0)
            + c2 * (2.0 + v * v * (7.0 - 18.0 * g) - 4.0 * g + v * (18.0 * g - 7.0))
        )
        ddpsi = 2.0 * num / den
        return dphi, ddphi, dpsi, ddpsi

    return TransversalCurve(coeff)


def mk_matrix(k: int, alphas) -> np.ndarray:
    """The lower-triangular reparameterization matrix M_k for k <= 3."""
    a = list(alphas)
    if k not in (1, 2, 3) or len(a) < k:
        raise ValueError("k must be 1, 2 or 3 with matching alphas")
    if k == 1:
        return np.array([[a[0]]])
    if k == 2:
        return np.array([[a[0], 0.0], [a[1], a[0] ** 2]])
    return np.array(
        [
            [a[0], 0.0, 0.0],
            [a[1], a[0] ** 2, 0.0],
            [a[2], 3.0 * a[0] * a[1], a[0] ** 3],
        ]
    )


def solve_reparam_system(left: np.ndarray, right: np.ndarray):
    """Least-squares alphas for right = M_k left, solved row by row.

    ``left`` and ``right`` stack the one-sided derivative vectors as rows
    (k, 3).  Returns (alphas, residuals) with one residual per row; the
    triangular structure makes each row a one-unknown least-squares solve
    given the earlier rows.
    """
    k = left.shape[0]
    if k not in (1, 2, 3) or right.shape != left.shape:
        raise ValueError("need matching (k, 3) derivative stacks with k <= 3")
    d1 = left[0]
    denom = float(np.dot(d1, d1))
    alphas = []
    residuals = []
    a1 = float(np.dot(right[0], d1)) / denom
    alphas.append(a1)
    residuals.append(float(np.linalg.norm(right[0] - a1 * d1)))
    if k >= 2:
        rhs = right[1] - a1 * a1 * left[1]
        a2 = float(np.dot(rhs, d1)) / denom
        alphas.append(a2)
        residuals.append(float(np.linalg.norm(rhs - a2 * d1)))
    if k >= 3:
        rhs = right[2] - 3.0 * a1 * alphas[1] * left[1] - a1**3 * left[2]
        a3 = float(np.dot(rhs, d1)) / denom
        alphas.append(a3)
        residuals.append(float(np.linalg.norm(rhs - a3 * d1)))
    return np.array(alphas), np.array(residuals)


def check_g2_via_curve(pair: AdjoinedPair, curve: TransversalCurve,
                       samples: int = 101,
                       label: Optional[str] = None) -> ContinuityCertificate:
    """Order-2 certificate from the explicit transversal curve family.

    At each boundary parameter the one-sided first and second derivatives of
    gamma_v are assembled by exact chain rule from the patch partials, and
    the residual of the 2x2 triangular reparameterization system (six scalar
    equations, unknowns alpha_1 > 0 and alpha_2) is recorded.
    """
    g1 = check_g1(pair, samples, label)
    if not g1.passed:
        return ContinuityCertificate("G2", g1.samples, g1.max_residual, False,
                                     g1.reason or "pair is not G1", label)
    taus = tau_samples(samples)
    records = []
    worst = 0.0
    for v in taus:
        s1 = evaluate(pair.net1, 0.0, v)
        s2 = evaluate(pair.net2, 0.0, v)
        d1_left = -s1.du
        d2_left = s1.duu
        dphi, ddphi, dpsi, ddpsi = curve.coefficients(float(v))
        d1_right = dphi * s2.du + dpsi * s2.dv
        d2_right = (
            ddphi * s2.du
            + ddpsi * s2.dv
            + dphi * dphi * s2.duu
            + 2.0 * dphi * dpsi * s2.duv
            + dpsi * dpsi * s2.dvv
        )
        # the curve must actually cross the boundary
        tangent = s1.dv
        if np.linalg.norm(np.cross(d1_left, tangent)) < 1e-12:
            return ContinuityCertificate("G2", tuple(records), math.inf, False,
                                         f"transversal parallel to boundary at tau={v}", label)
        alphas, res = solve_reparam_system(
            np.vstack([d1_left, d2_left]), np.vstack([d1_right, d2_right])
        )
        if alphas[0] <= 0.0:
            return ContinuityCertificate("G2", tuple(records), math.inf, False,
                                         "orientation-reversing match", label)
        r = float(np.max(res))
        records.append((float(v), r))
        worst = max(worst, r)
    return ContinuityCertificate("G2", tuple(records), worst, worst < G2_TOL, None, label)


# -- gluing arbitrary oriented nets back to the canonical frame ---------------

def _orthonormal_frame(corners: np.ndarray) -> np.ndarray:
    """Right-handed orthonormal frame attached to a corner triple (rows)."""
    centroid = corners.sum(axis=0)
    t1 = centroid / np.linalg.norm(centroid)
    t2 = corners[0] - np.dot(corners[0], t1) * t1
    t2 = t2 / np.linalg.norm(t2)
    t3 = np.cross(t1, t2)
    return np.column_stack([t1, t2, t3])


def canonicalize_pair(net_a: ControlNet, net_b: ControlNet,
                      tol: float = 1e-9) -> AdjoinedPair:
    """Rotate two edge-sharing nets into the canonical glued position.

    Identifies the shared corners, relabels both nets so the shared edge is
    the u=0 boundary with matching orientation, and applies the rotation
    carrying net_a's corners onto the canonical triangle.  The result is an
    :class:`AdjoinedPair` whose first net sits on the canonical triangle and
    whose second net occupies the mirror neighbour.
    """
    ca, cb = net_a.corners(), net_b.corners()
    shared_a, shared_b = [], []
    for ia in range(3):
        for ib in range(3):
            if np.linalg.norm(ca[ia] - cb[ib]) < tol:
                shared_a.append(ia)
                shared_b.append(ib)
    if len(shared_a) != 2:
        raise ValueError("nets do not share exactly one edge")
    lone_a = 3 - sum(shared_a)
    lone_b = 3 - sum(shared_b)
    # even permutation for net_a keeps its outward orientation
    perm_a = (lone_a, shared_a[0], shared_a[1])
    if not _is_even(perm_a):
        perm_a = (lone_a, shared_a[1], shared_a[0])
    a1 = net_a.relabel(perm_a)
    # net_b's slots 1 and 2 must be the same sphere points as net_a's
    want1 = a1.corners()[1]
    if np.linalg.norm(cb[shared_b[0]] - want1) < tol:
        perm_b = (lone_b, shared_b[0], shared_b[1])
    else:
        perm_b = (lone_b, shared_b[1], shared_b[0])
    b1 = net_b.relabel(perm_b)

    chord = np.linalg.norm(a1.corners()[0] - a1.corners()[1])
    c = chord / math.sqrt(3.0)
    frame_canon = _orthonormal_frame(canonical_vertices(c))
    frame_a = _orthonormal_frame(a1.corners())
    rot = frame_canon @ frame_a.T
    p1 = a1.transform(rot)
    p2 = b1.transform(rot)
    return AdjoinedPair.make(p1, p2, c)


def _is_even(perm: tuple[int, int, int]) -> bool:
    inversions = sum(
        1 for i in range(3) for j in range(i + 1, 3) if perm[i] > perm[j]
    )
    return inversions % 2 == 0


def check_vertex_ring(nets: list[ControlNet], level: str = "G1",
                      label: Optional[str] = None,
                      samples: int = 33) -> ContinuityCertificate:
    """Continuity certificate for a ring of patches around a shared vertex.

    The ring determines the spline's tangent plane (and, at order 2, its
    curvature data) through consecutive pairs, so the certificate checks
    that every patch's corner sits on the common point, that all corner
    normals coincide, and, at order 2, that each edge-sharing consecutive
    pair passes the transversal-curve test.
    """
    if level not in ("G1", "G2"):
        raise ValueError("vertex rings certify at G1 or G2")
    corner_param = {0: (1.0, 0.0), 1: (0.0, 1.0), 2: (0.0, 0.0)}
    # locate the shared vertex: a corner common to all nets
    shared_point = None
    per_net_corner = []
    candidates = [tuple(p) for p in nets[0].corners()]
    for cand in candidates:
        hits = []
        for net in nets:
            d = np.linalg.norm(net.corners() - np.array(cand), axis=1)
            if d.min() < 1e-9:
                hits.append(int(d.argmin()))
            else:
                break
        if len(hits) == len(nets):
            shared_point = np.array(cand)
            per_net_corner = hits
            break
    if shared_point is None:
        return ContinuityCertificate(level, (), math.inf, False,
                                     "nets do not share a vertex", label)

    # G0 at the vertex plus normal agreement
    normals = []
    worst_point = 0.0
    for net, corner in zip(nets, per_net_corner):
        u, v = corner_param[corner]
        sp = evaluate(net, u, v)
        worst_point = max(worst_point, float(np.linalg.norm(sp.position - shared_point)))
        if bool(sp.degenerate):
            return ContinuityCertificate(level, (), math.inf, False,
                                         "degenerate normal at the shared vertex", label)
        normals.append(sp.normal)
    worst = 0.0
    for i in range(len(normals)):
        for j in range(i + 1, len(normals)):
            worst = max(worst, float(np.linalg.norm(np.cross(normals[i], normals[j]))))
    records = ((0.0, worst),)
    if level == "G1" or worst >= G1_TOL:
        passed = worst < G1_TOL and worst_point < G0_TOL
        reason = None if passed else "vertex normals disagree"
        return ContinuityCertificate(level, tuple(records), worst, passed, reason, label)

    # order 2: every consecutive edge-sharing pair must pass the curve test
    pairs = _consecutive_pairs(nets)
    if not pairs:
        return ContinuityCertificate("G2", (), math.inf, False,
                                     "could not pair up ring neighbours", label)
    for ia, ib in pairs:
        pair = canonicalize_pair(nets[ia], nets[ib])
        curve = _transversal_for(pair)
        cert = check_g2_via_curve(pair, curve, samples)
        worst = max(worst, cert.max_residual)
        if not cert.passed:
            return ContinuityCertificate("G2", cert.samples, cert.max_residual, False,
                                         cert.reason or "consecutive pair failed", label)
    return ContinuityCertificate("G2", tuple(records), worst, worst < G2_TOL, None, label)


def _consecutive_pairs(nets: list[ControlNet]) -> list[tuple[int, int]]:
    """Pairs of ring members that share an edge (two common corners)."""
    out = []
    for i in range(len(nets)):
        for j in range(i + 1, len(nets)):
            ci, cj = nets[i].corners(), nets[j].corners()
            common = sum(
                1
                for a in range(3)
                for b in range(3)
                if np.linalg.norm(ci[a] - cj[b]) < 1e-9
            )
            if common == 2:
                out.append((i, j))
    return out


def _transversal_for(pair: AdjoinedPair) -> TransversalCurve:
    from .families import infer_quartic_gamma

    if pair.net1.degree == 3:
        return cubic_transversal(pair.c)
    if pair.net1.degree == 4:
        return quartic_transversal(pair.c, infer_quartic_gamma(pair.net1))
    raise ValueError("transversal curves are available for cubic and quartic nets")
