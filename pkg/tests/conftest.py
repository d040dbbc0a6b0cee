"""Shared fixtures: the three kinds and cached optimal solutions."""

import functools

import pytest

from spherespline.geometry import PolyhedronKind
from spherespline.optimal import Measure, optimal_family, optimal_solution

KINDS = [
    PolyhedronKind.TETRAHEDRON,
    PolyhedronKind.OCTAHEDRON,
    PolyhedronKind.ICOSAHEDRON,
]


@functools.lru_cache(maxsize=None)
def cached_solution(kind: PolyhedronKind, degree: int, measure: Measure,
                    grid_n: int = 512):
    return optimal_solution(kind, degree, measure, grid_n)


@functools.lru_cache(maxsize=None)
def cached_family(kind: PolyhedronKind, degree: int, measure: Measure = Measure.RADIAL):
    return optimal_family(kind, degree, measure)


@functools.lru_cache(maxsize=None)
def cached_net(kind: PolyhedronKind, degree: int, measure: Measure = Measure.RADIAL):
    return cached_family(kind, degree, measure).net()


@pytest.fixture(params=KINDS, ids=lambda k: k.value)
def kind(request):
    return request.param
