"""Canonical triangle and symmetric-value domain tests."""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from spherespline.geometry import (
    PolyhedronKind,
    canonical_triangle,
    in_omega,
    omega_bounds,
    symmetric_images,
    to_omega,
)

from conftest import KINDS


def test_polyhedron_constants():
    assert PolyhedronKind.TETRAHEDRON.c == pytest.approx(2 * math.sqrt(2) / 3, abs=1e-16)
    assert PolyhedronKind.OCTAHEDRON.c == pytest.approx(math.sqrt(6) / 3, abs=1e-16)
    assert PolyhedronKind.ICOSAHEDRON.c == pytest.approx(
        math.sqrt(2 * (5 - math.sqrt(5)) / 15), abs=1e-16
    )
    for kind in KINDS:
        assert 0.0 < kind.c < 1.0


def test_parse_names():
    assert PolyhedronKind.parse("tetra") is PolyhedronKind.TETRAHEDRON
    assert PolyhedronKind.parse("octahedron") is PolyhedronKind.OCTAHEDRON
    assert PolyhedronKind.parse("ICOSA") is PolyhedronKind.ICOSAHEDRON
    with pytest.raises(ValueError):
        PolyhedronKind.parse("cube")


def test_tetrahedron_first_vertex():
    tri = canonical_triangle(PolyhedronKind.TETRAHEDRON)
    assert tri.v0 == pytest.approx([2 * math.sqrt(2) / 3, 0.0, 1.0 / 3.0], abs=1e-15)


def test_vertices_on_unit_sphere(kind):
    tri = canonical_triangle(kind)
    for v in (tri.v0, tri.v1, tri.v2):
        assert abs(np.linalg.norm(v) - 1.0) < 1e-14


def test_octahedron_vertex_height():
    tri = canonical_triangle(PolyhedronKind.OCTAHEDRON)
    assert np.allclose(tri.vertices[:, 2], 1.0 / math.sqrt(3.0), atol=1e-15)


def test_triangle_is_equilateral(kind):
    v = canonical_triangle(kind).vertices
    chords = [np.linalg.norm(v[i] - v[(i + 1) % 3]) for i in range(3)]
    assert max(chords) - min(chords) < 1e-14


def test_triangle_shares_z(kind):
    v = canonical_triangle(kind).vertices
    assert np.allclose(v[:, 2], math.sqrt(1 - kind.c**2), atol=1e-15)


def test_to_omega_examples():
    assert to_omega(1 / 3, 1 / 3) == pytest.approx((1 / 3, 1 / 27), abs=1e-16)
    assert to_omega(1.0, 0.0) == pytest.approx((0.0, 0.0), abs=1e-16)
    assert to_omega(0.5, 0.5) == pytest.approx((0.25, 0.0), abs=1e-16)


def test_omega_bounds_examples():
    lo, hi = omega_bounds(1 / 3)
    assert lo == pytest.approx(1 / 27, abs=1e-15)
    assert hi == pytest.approx(1 / 27, abs=1e-15)
    lo, hi = omega_bounds(0.0)
    assert lo == pytest.approx(-4 / 27, abs=1e-15)
    assert hi == pytest.approx(0.0, abs=1e-15)
    # the edge-midpoint image lands inside the bounds
    e2, e3 = to_omega(0.5, 0.5)
    lo, hi = omega_bounds(e2)
    assert lo - 1e-15 <= e3 <= hi + 1e-15


def test_omega_bounds_rejects_out_of_range():
    with pytest.raises(ValueError):
        omega_bounds(0.4)
    with pytest.raises(ValueError):
        omega_bounds(-0.1)


def _quasi_random_delta(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Low-discrepancy points of the simplex: Kronecker sequence folded
    across the diagonal of the unit square (a measure-preserving map)."""
    g = 1.3247179572447460  # plastic number
    a1, a2 = 1.0 / g, 1.0 / (g * g)
    idx = np.arange(1, n + 1)
    u = np.mod(0.5 + a1 * idx, 1.0)
    v = np.mod(0.5 + a2 * idx, 1.0)
    over = u + v > 1.0
    u[over], v[over] = 1.0 - u[over], 1.0 - v[over]
    return u, v


def test_omega_membership_one_million_points():
    u, v = _quasi_random_delta(1_000_000)
    e2, e3 = to_omega(u, v)
    assert np.all(in_omega(e2, e3))


def test_boundary_and_medians_map_to_omega_boundary():
    t = np.linspace(0.0, 1.0, 301)
    lines = [
        (t, np.zeros_like(t)),          # v = 0 edge
        (np.zeros_like(t), t),          # u = 0 edge
        (t, 1.0 - t),                   # w = 0 edge
        (0.5 * t, 0.5 * t),             # median u = v
        (t * 0.5, 1.0 - 2.0 * (t * 0.5)),  # median v = w
        (1.0 - 2.0 * (t * 0.5), t * 0.5),  # median u = w
    ]
    for u, v in lines:
        e2, e3 = to_omega(u, v)
        lo, hi = omega_bounds(np.clip(e2, 0.0, 1.0 / 3.0))
        attained = np.minimum(np.abs(e3 - np.maximum(lo, 0.0)), np.abs(e3 - hi))
        assert np.max(attained) < 1e-12


def test_interior_points_map_strictly_inside():
    rng = np.random.default_rng(7)
    u = rng.uniform(0.02, 0.9, 4000)
    v = rng.uniform(0.02, 0.9, 4000)
    keep = (u + v < 0.97)
    u, v = u[keep], v[keep]
    w = 1.0 - u - v
    # drop anything within 1e-3 of a median or an edge
    off_median = (
        (np.abs(u - v) > 1e-3) & (np.abs(u - w) > 1e-3) & (np.abs(v - w) > 1e-3)
    )
    u, v = u[off_median], v[off_median]
    e2, e3 = to_omega(u, v)
    lo, hi = omega_bounds(e2)
    gap = np.minimum(e3 - np.maximum(lo, 0.0), hi - e3)
    assert np.all(gap > 1e-9)


def test_median_subtriangles_map_injectively():
    # one fine grid per subtriangle; each image set must be collision-free
    n = 120
    iu, iv = np.meshgrid(np.arange(n + 1), np.arange(n + 1), indexing="ij")
    mask = iu + iv <= n
    u, v = iu[mask] / n, iv[mask] / n
    w = 1.0 - u - v
    coords = np.stack([u, v, w], axis=1)
    order = np.argsort(-coords, axis=1, kind="stable")
    regions = {}
    for q in range(len(u)):
        key = tuple(order[q])
        regions.setdefault(key, []).append(q)
    assert len(regions) == 6
    for key, idxs in regions.items():
        # interior points only: ties sit on the subtriangle boundary
        sel = [q for q in idxs
               if len({round(c, 12) for c in coords[q]}) == 3]
        e2, e3 = to_omega(u[sel], v[sel])
        images = {(round(a, 9), round(b, 11)) for a, b in zip(e2, e3)}
        assert len(images) == len(sel)


def test_symmetric_images_orbit():
    imgs = symmetric_images(0.2, 0.3)
    assert imgs.shape == (6, 2)
    e2s, e3s = to_omega(imgs[:, 0], imgs[:, 1])
    assert np.ptp(e2s) < 1e-15 and np.ptp(e3s) < 1e-15


@given(st.floats(0, 1), st.floats(0, 1))
@settings(max_examples=200, deadline=None)
def test_to_omega_lands_in_omega(a, b):
    # fold the square onto the simplex
    u, v = (a, b) if a + b <= 1 else (1 - a, 1 - b)
    e2, e3 = to_omega(u, v)
    assert bool(in_omega(e2, e3))
