"""Triangular Bernstein-Bezier patches: evaluation, derivatives, elevation.

Evaluation runs de Casteljau's repeated convex combinations, which stays
stable near the simplex corners and hands out first and second partials for
free from the last two intermediate layers.  All evaluation entry points
broadcast over numpy arrays of parameter values, so dense grids cost a
handful of vectorized passes instead of a Python loop per sample.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Mapping

import numpy as np

__all__ = [
    "ControlNet",
    "SurfacePoint",
    "NetParseError",
    "bernstein",
    "evaluate",
    "elevate_degree",
]

#: below this cross-product norm a surface normal is reported degenerate
DEGENERATE_NORMAL_EPS = 1e-12

#: evaluation is meaningful on the simplex fattened by this L1 margin,
#: which is all the continuity checks ever need
DOMAIN_MARGIN = 0.05


def _lex_indices(n: int) -> list[tuple[int, int, int]]:
    return [(i, j, n - i - j) for i in range(n + 1) for j in range(n - i + 1)]


class ControlNet:
    """Immutable triangular control net of a given total degree.

    Control points are indexed by multi-indices (i, j, k) with i+j+k = n.
    """

    def __init__(self, degree: int, points: Mapping[tuple[int, int, int], np.ndarray]):
        if degree < 0:
            raise ValueError("degree must be nonnegative")
        expected = _lex_indices(degree)
        if set(points.keys()) != set(expected):
            raise ValueError(
                f"degree-{degree} net needs exactly the {len(expected)} indices "
                f"with i+j+k={degree}"
            )
        self.degree = degree
        self.indices: tuple[tuple[int, int, int], ...] = tuple(expected)
        coords = np.array([points[idx] for idx in self.indices], dtype=float)
        if coords.shape != (len(expected), 3):
            raise ValueError("control points must be 3-vectors")
        coords.setflags(write=False)
        self.coords = coords
        self._pos = {idx: q for q, idx in enumerate(self.indices)}

    def point(self, i: int, j: int, k: int) -> np.ndarray:
        return self.coords[self._pos[(i, j, k)]]

    def items(self) -> Iterator[tuple[tuple[int, int, int], np.ndarray]]:
        return zip(self.indices, self.coords)

    def corners(self) -> np.ndarray:
        """Corner control points as rows [b_n00, b_0n0, b_00n]."""
        n = self.degree
        return np.array([self.point(n, 0, 0), self.point(0, n, 0), self.point(0, 0, n)])

    def is_vertex_interpolating(self, vertices: np.ndarray, tol: float = 1e-14) -> bool:
        return bool(np.max(np.abs(self.corners() - np.asarray(vertices))) <= tol)

    def map_points(self, fn) -> "ControlNet":
        return ControlNet(self.degree, {idx: fn(p) for idx, p in self.items()})

    def transform(self, matrix: np.ndarray, shift=None) -> "ControlNet":
        """Net with every control point mapped through x -> matrix @ x + shift."""
        matrix = np.asarray(matrix, dtype=float)
        shifted = 0.0 if shift is None else np.asarray(shift, dtype=float)
        coords = self.coords @ matrix.T + shifted
        return ControlNet(self.degree, dict(zip(self.indices, coords)))

    def relabel(self, perm: tuple[int, int, int]) -> "ControlNet":
        """Net with corner slots permuted: new corner q is old corner perm[q].

        The surface is unchanged as a point set; only the barycentric
        parameterization is relabeled.
        """
        if sorted(perm) != [0, 1, 2]:
            raise ValueError("perm must be a permutation of (0, 1, 2)")
        pts = {}
        for idx in self.indices:
            old = [0, 0, 0]
            for q in range(3):
                old[perm[q]] = idx[q]
            pts[idx] = self.point(*old)
        return ControlNet(self.degree, pts)

    def almost_equal(self, other: "ControlNet", tol: float = 1e-12) -> bool:
        return (
            self.degree == other.degree
            and float(np.max(np.abs(self.coords - other.coords))) <= tol
        )

    def max_distance(self, other: "ControlNet") -> float:
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        return float(np.max(np.abs(self.coords - other.coords)))

    # -- plain-text serialization ------------------------------------------

    def to_text(self) -> str:
        lines = [f"TBNET n={self.degree}"]
        for (i, j, k), p in self.items():
            lines.append(f"{i} {j} {k} {p[0]:.17g} {p[1]:.17g} {p[2]:.17g}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "ControlNet":
        lines = text.splitlines()
        if not lines:
            raise NetParseError(1, "empty input")
        header = lines[0].strip()
        if not header.startswith("TBNET n="):
            raise NetParseError(1, f"expected 'TBNET n=<degree>' header, got {header!r}")
        try:
            degree = int(header[len("TBNET n="):])
        except ValueError:
            raise NetParseError(1, f"bad degree in header {header!r}") from None
        points = {}
        for no, line in enumerate(lines[1:], start=2):
            if not line.strip():
                continue
            parts = line.split()
            if len(parts) != 6:
                raise NetParseError(no, f"expected 'i j k x y z', got {line!r}")
            try:
                i, j, k = int(parts[0]), int(parts[1]), int(parts[2])
                xyz = np.array([float(parts[3]), float(parts[4]), float(parts[5])])
            except ValueError:
                raise NetParseError(no, f"malformed numbers in {line!r}") from None
            if i + j + k != degree or min(i, j, k) < 0:
                raise NetParseError(no, f"index ({i},{j},{k}) invalid for degree {degree}")
            if (i, j, k) in points:
                raise NetParseError(no, f"duplicate index ({i},{j},{k})")
            points[(i, j, k)] = xyz
        try:
            return cls(degree, points)
        except ValueError as exc:
            raise NetParseError(len(lines), str(exc)) from None


class NetParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class SurfacePoint:
    """Position, first/second partials and unit normal at one parameter point.

    All fields broadcast: evaluating at an array of (u, v) yields stacked
    arrays with a trailing coordinate axis.  Where the cross product of the
    partials falls below ``DEGENERATE_NORMAL_EPS`` the normal is NaN and
    ``degenerate`` flags the sample; that is a regularity report, not an
    evaluation failure.
    """

    position: np.ndarray
    du: np.ndarray
    dv: np.ndarray
    duu: np.ndarray
    duv: np.ndarray
    dvv: np.ndarray
    cross: np.ndarray
    normal: np.ndarray
    degenerate: np.ndarray


def bernstein(n: int, i: int, j: int, k: int, u, v):
    """Bivariate Bernstein polynomial n!/(i!j!k!) u^i v^j w^k, w = 1-u-v."""
    if i + j + k != n or min(i, j, k) < 0:
        raise ValueError(f"({i},{j},{k}) is not a multi-index of degree {n}")
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    w = 1.0 - u - v
    coef = math.factorial(n) // (math.factorial(i) * math.factorial(j) * math.factorial(k))
    return coef * u**i * v**j * w**k


def _decasteljau(net: ControlNet, u, v):
    """Run all de Casteljau layers; returns (point, layer1, layer2) dicts."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    shape = np.broadcast(u, v).shape
    w = 1.0 - u - v
    uu, vv, ww = u[..., None], v[..., None], w[..., None]
    layer = {
        idx: np.broadcast_to(net.coords[q], shape + (3,))
        for q, idx in enumerate(net.indices)
    }
    layer1 = layer2 = None
    for m in range(net.degree, 0, -1):
        if m == 2:
            layer2 = layer
        if m == 1:
            layer1 = layer
        nxt = {}
        for i in range(m):
            for j in range(m - i):
                k = m - 1 - i - j
                nxt[(i, j, k)] = (
                    uu * layer[(i + 1, j, k)]
                    + vv * layer[(i, j + 1, k)]
                    + ww * layer[(i, j, k + 1)]
                )
        layer = nxt
    return layer[(0, 0, 0)] + 0.0, layer1, layer2


def evaluate(net: ControlNet, u, v) -> SurfacePoint:
    """Evaluate position, partials and normal of the patch at (u, v).

    Values slightly outside the simplex (up to L1 margin ``DOMAIN_MARGIN``)
    are legitimate inputs for continuity testing; the polynomial extension is
    exact either way.
    """
    n = net.degree
    position, layer1, layer2 = _decasteljau(net, u, v)
    zeros = np.zeros_like(position)
    if n >= 1:
        du = n * (layer1[(1, 0, 0)] - layer1[(0, 0, 1)])
        dv = n * (layer1[(0, 1, 0)] - layer1[(0, 0, 1)])
    else:
        du = dv = zeros
    if n >= 2:
        nn = n * (n - 1)
        duu = nn * (layer2[(2, 0, 0)] - 2 * layer2[(1, 0, 1)] + layer2[(0, 0, 2)])
        duv = nn * (
            layer2[(1, 1, 0)] - layer2[(1, 0, 1)] - layer2[(0, 1, 1)] + layer2[(0, 0, 2)]
        )
        dvv = nn * (layer2[(0, 2, 0)] - 2 * layer2[(0, 1, 1)] + layer2[(0, 0, 2)])
    else:
        duu = duv = dvv = zeros
    cross = np.cross(du, dv)
    norm = np.linalg.norm(cross, axis=-1)
    degenerate = norm < DEGENERATE_NORMAL_EPS
    with np.errstate(divide="ignore", invalid="ignore"):
        normal = np.where(degenerate[..., None], np.nan, cross / norm[..., None])
    return SurfacePoint(position, du, dv, duu, duv, dvv, cross, normal, degenerate)


def elevate_degree(net: ControlNet) -> ControlNet:
    """Degree-(n+1) net describing the identical surface."""
    n = net.degree
    pts = {}
    for i in range(n + 2):
        for j in range(n + 2 - i):
            k = n + 1 - i - j
            acc = np.zeros(3)
            if i > 0:
                acc += i * net.point(i - 1, j, k)
            if j > 0:
                acc += j * net.point(i, j - 1, k)
            if k > 0:
                acc += k * net.point(i, j, k - 1)
            pts[(i, j, k)] = acc / (n + 1)
    return ControlNet(n + 1, pts)
