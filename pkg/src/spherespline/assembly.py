"""Full-sphere splines: one rotated copy of the canonical patch per face.

Each Platonic face triple is ordered counterclockwise seen from outside, so
the orthonormal-frame transform carrying the canonical triangle onto the
face is always a pure rotation (determinant +1) and every patch normal stays
outward.  Shared boundary curves then coincide pointwise because the family
nets carry the full symmetry of their triangle.
"""

from __future__ import annotations

import itertools
import math
import struct
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .bezier import ControlNet, evaluate
from .continuity import (
    AdjoinedPair,
    ContinuityCertificate,
    canonicalize_pair,
    check_g1,
    check_g2_via_curve,
    check_vertex_ring,
    _transversal_for,
)
from .curvature import curvature_from_derivatives
from .geometry import PolyhedronKind, canonical_vertices

__all__ = [
    "Polyhedron",
    "FacePatch",
    "EdgeRecord",
    "SphereSpline",
    "polyhedron",
    "build_sphere",
    "certify_sphere",
    "sample_mesh",
    "Mesh",
    "write_obj",
    "write_ply",
    "export_mesh",
    "audit_mesh",
    "MeshAudit",
]

WELD_TOL = 1e-9


@dataclass(frozen=True)
class Polyhedron:
    kind: PolyhedronKind
    vertices: np.ndarray          # (V, 3) unit vectors
    faces: np.ndarray             # (F, 3) vertex indices, CCW from outside
    edges: tuple[tuple[int, int], ...]
    vertex_faces: tuple[tuple[int, ...], ...]


def _orient_outward(vertices: np.ndarray, faces: list[tuple[int, int, int]]):
    out = []
    for f in faces:
        a, b, c = (vertices[i] for i in f)
        if np.dot(np.cross(b - a, c - a), a + b + c) < 0.0:
            f = (f[0], f[2], f[1])
        out.append(f)
    return np.array(out, dtype=int)


def polyhedron(kind: PolyhedronKind) -> Polyhedron:
    """Vertices on the unit sphere and outward-ordered triangular faces."""
    if kind is PolyhedronKind.TETRAHEDRON:
        verts = np.array(
            [[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]], dtype=float
        ) / math.sqrt(3.0)
    elif kind is PolyhedronKind.OCTAHEDRON:
        verts = np.array(
            [[1, 0, 0], [-1, 0, 0], [0, 1, 0], [0, -1, 0], [0, 0, 1], [0, 0, -1]],
            dtype=float,
        )
    else:
        phi = (1.0 + math.sqrt(5.0)) / 2.0
        base = []
        for a, b in itertools.product((-1.0, 1.0), repeat=2):
            base += [(0.0, a, b * phi), (a, b * phi, 0.0), (a * phi, 0.0, b)]
        verts = np.array(base)
        verts /= np.linalg.norm(verts, axis=1, keepdims=True)

    # faces = triples of mutually nearest neighbours (exactly the triangles
    # of the polyhedral graph for these three solids)
    d2 = np.sum((verts[:, None, :] - verts[None, :, :]) ** 2, axis=-1)
    off = d2 + np.eye(len(verts)) * 1e9
    edge2 = off.min()
    adj = off < edge2 * (1.0 + 1e-9)
    faces = []
    n = len(verts)
    for i in range(n):
        for j in range(i + 1, n):
            if not adj[i, j]:
                continue
            for k in range(j + 1, n):
                if adj[i, k] and adj[j, k]:
                    faces.append((i, j, k))
    faces = _orient_outward(verts, faces)

    edge_set = sorted(
        {tuple(sorted((f[a], f[(a + 1) % 3]))) for f in faces for a in range(3)}
    )
    vertex_faces = tuple(
        tuple(fi for fi, f in enumerate(faces) if v in f) for v in range(n)
    )
    return Polyhedron(kind, verts, faces, tuple(edge_set), vertex_faces)


@dataclass(frozen=True)
class FacePatch:
    net: ControlNet
    transform: np.ndarray
    vertex_ids: tuple[int, int, int]


@dataclass(frozen=True)
class EdgeRecord:
    face_a: int
    edge_a: int          # edge index within face_a: opposite its corner edge_a
    face_b: int
    edge_b: int
    vertex_ids: tuple[int, int]


@dataclass(frozen=True)
class SphereSpline:
    kind: PolyhedronKind
    canonical_net: ControlNet
    faces: tuple[FacePatch, ...]
    adjacency: tuple[EdgeRecord, ...]
    solid: Polyhedron


def _frame(corners: np.ndarray) -> np.ndarray:
    centroid = corners.sum(axis=0)
    t1 = centroid / np.linalg.norm(centroid)
    t2 = corners[0] - np.dot(corners[0], t1) * t1
    t2 /= np.linalg.norm(t2)
    return np.column_stack([t1, t2, np.cross(t1, t2)])


def build_sphere(kind: PolyhedronKind, net: ControlNet) -> SphereSpline:
    """Rotate the canonical net onto every face of the chosen triangulation."""
    canon = canonical_vertices(kind.c)
    if float(np.max(np.abs(net.corners() - canon))) > 1e-10:
        raise ValueError("net corners do not interpolate the canonical triangle")
    solid = polyhedron(kind)
    frame_c = _frame(canon)
    patches = []
    for f in solid.faces:
        corners = solid.vertices[list(f)]
        rot = _frame(corners) @ frame_c.T
        patches.append(FacePatch(net.transform(rot), rot, tuple(int(i) for i in f)))

    adjacency = []
    for v0, v1 in solid.edges:
        touching = [
            fi for fi, f in enumerate(solid.faces) if v0 in f and v1 in f
        ]
        fa, fb = touching
        ea = next(a for a in range(3) if solid.faces[fa][a] not in (v0, v1))
        eb = next(a for a in range(3) if solid.faces[fb][a] not in (v0, v1))
        adjacency.append(EdgeRecord(fa, ea, fb, eb, (v0, v1)))
    return SphereSpline(kind, net, tuple(patches), tuple(adjacency), solid)


def certify_sphere(sphere: SphereSpline, level: str = "G1",
                   samples: int = 101) -> list[ContinuityCertificate]:
    """Edge-by-edge and vertex-ring certificates for the whole sphere."""
    if level not in ("G1", "G2"):
        raise ValueError("certification level must be G1 or G2")
    certs: list[ContinuityCertificate] = []
    for rec in sphere.adjacency:
        label = f"edge {rec.vertex_ids[0]}-{rec.vertex_ids[1]}"
        pair = canonicalize_pair(sphere.faces[rec.face_a].net, sphere.faces[rec.face_b].net)
        if level == "G1":
            certs.append(check_g1(pair, samples, label=label))
        else:
            certs.append(check_g2_via_curve(pair, _transversal_for(pair), samples, label=label))
    for vid, face_ids in enumerate(sphere.solid.vertex_faces):
        nets = [sphere.faces[fi].net for fi in face_ids]
        certs.append(check_vertex_ring(nets, level, label=f"vertex {vid}"))
    return certs


# -- mesh sampling and export -------------------------------------------------

@dataclass(frozen=True)
class Mesh:
    vertices: np.ndarray              # (N, 3)
    triangles: np.ndarray             # (M, 3) int
    quality: Optional[np.ndarray]     # per-vertex scalar channel or None


class _Welder:
    """Spatial-hash vertex welding at a fixed tolerance."""

    def __init__(self, tol: float = WELD_TOL):
        self.tol = tol
        self.cells: dict[tuple[int, int, int], list[int]] = {}
        self.points: list[np.ndarray] = []
        self.quality: list[float] = []

    def add(self, p: np.ndarray, q: float | None) -> int:
        key = tuple(int(x) for x in np.floor(p / self.tol + 0.5))
        for dk in itertools.product((-1, 0, 1), repeat=3):
            cell = (key[0] + dk[0], key[1] + dk[1], key[2] + dk[2])
            for idx in self.cells.get(cell, ()):
                if np.max(np.abs(self.points[idx] - p)) <= self.tol:
                    return idx
        idx = len(self.points)
        self.points.append(p)
        self.quality.append(0.0 if q is None else q)
        self.cells.setdefault(key, []).append(idx)
        return idx


def sample_mesh(sphere: SphereSpline, subdivisions: int,
                with_curvature: bool = False) -> Mesh:
    """Uniform barycentric triangulation of every patch, welded along edges.

    Each patch contributes ``subdivisions**2`` triangles; shared boundary
    samples agree across patches far below the weld tolerance, so the result
    is a single closed surface.
    """
    if subdivisions < 1:
        raise ValueError("subdivisions must be at least 1")
    m = subdivisions
    iu, iv = np.meshgrid(np.arange(m + 1), np.arange(m + 1), indexing="ij")
    mask = iu + iv <= m
    us, vs = iu[mask] / m, iv[mask] / m
    local_index = -np.ones((m + 1, m + 1), dtype=int)
    local_index[mask] = np.arange(mask.sum())

    tris_local = []
    for a in range(m):
        for b in range(m - a):
            i0, i1, i2 = local_index[a, b], local_index[a + 1, b], local_index[a, b + 1]
            tris_local.append((i0, i1, i2))
            if a + b < m - 1:
                i3 = local_index[a + 1, b + 1]
                tris_local.append((i1, i3, i2))
    tris_local = np.array(tris_local, dtype=int)

    welder = _Welder()
    triangles = []
    for patch in sphere.faces:
        sp = evaluate(patch.net, us, vs)
        pos = sp.position
        if with_curvature:
            K = curvature_from_derivatives(sp.du, sp.dv, sp.duu, sp.duv, sp.dvv)[6]
        ids = np.empty(len(pos), dtype=int)
        for q in range(len(pos)):
            ids[q] = welder.add(pos[q], float(K[q]) if with_curvature else None)
        triangles.extend(ids[tris_local])
    quality = np.array(welder.quality) if with_curvature else None
    return Mesh(np.array(welder.points), np.array(triangles, dtype=int), quality)


def write_obj(mesh: Mesh, path: str) -> None:
    """OBJ text export; the optional scalar channel rides along as a comment
    line after each vertex."""
    with open(path, "w") as fh:
        for q, p in enumerate(mesh.vertices):
            fh.write(f"v {p[0]:.17g} {p[1]:.17g} {p[2]:.17g}\n")
            if mesh.quality is not None:
                fh.write(f"# K {mesh.quality[q]:.17g}\n")
        for t in mesh.triangles:
            fh.write(f"f {t[0] + 1} {t[1] + 1} {t[2] + 1}\n")


def write_ply(mesh: Mesh, path: str) -> None:
    """Binary little-endian PLY with float64 coordinates and optional
    float64 quality channel."""
    props = ["property float64 x", "property float64 y", "property float64 z"]
    if mesh.quality is not None:
        props.append("property float64 quality")
    header = "\n".join(
        [
            "ply",
            "format binary_little_endian 1.0",
            f"element vertex {len(mesh.vertices)}",
            *props,
            f"element face {len(mesh.triangles)}",
            "property list uchar int32 vertex_indices",
            "end_header",
        ]
    )
    with open(path, "wb") as fh:
        fh.write(header.encode("ascii") + b"\n")
        if mesh.quality is not None:
            data = np.column_stack([mesh.vertices, mesh.quality])
        else:
            data = mesh.vertices
        fh.write(np.ascontiguousarray(data, dtype="<f8").tobytes())
        for t in mesh.triangles:
            fh.write(struct.pack("<Biii", 3, int(t[0]), int(t[1]), int(t[2])))


def export_mesh(sphere: SphereSpline, subdivisions: int, with_curvature: bool,
                fmt: str, path: str) -> Mesh:
    """Sample, weld and write a mesh; returns the in-memory mesh."""
    mesh = sample_mesh(sphere, subdivisions, with_curvature)
    if fmt == "obj":
        write_obj(mesh, path)
    elif fmt == "ply":
        write_ply(mesh, path)
    else:
        raise ValueError(f"unsupported format {fmt!r} (obj or ply)")
    return mesh


@dataclass(frozen=True)
class MeshAudit:
    edge_manifold: bool
    consistently_wound: bool
    outward_oriented: bool
    max_radial_deviation: float


def audit_mesh(mesh: Mesh) -> MeshAudit:
    """Watertightness and orientation audit of an exported sphere mesh."""
    undirected: dict[tuple[int, int], int] = {}
    directed: dict[tuple[int, int], int] = {}
    for t in mesh.triangles:
        for a in range(3):
            i, j = int(t[a]), int(t[(a + 1) % 3])
            undirected[(min(i, j), max(i, j))] = undirected.get((min(i, j), max(i, j)), 0) + 1
            directed[(i, j)] = directed.get((i, j), 0) + 1
    manifold = all(v == 2 for v in undirected.values())
    wound = all(v == 1 for v in directed.values())
    a = mesh.vertices[mesh.triangles[:, 0]]
    b = mesh.vertices[mesh.triangles[:, 1]]
    c = mesh.vertices[mesh.triangles[:, 2]]
    normals = np.cross(b - a, c - a)
    centers = (a + b + c) / 3.0
    outward = bool(np.all(np.sum(normals * centers, axis=-1) > 0.0))
    radial = float(np.max(np.abs(np.linalg.norm(mesh.vertices, axis=1) - 1.0)))
    return MeshAudit(manifold, wound, outward, radial)
