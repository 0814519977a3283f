"""Dual Newton diagram and its Jacobian refinement.

Vertices of a dual diagram are the primitive inward facet normals of a Newton
polyhedron. The Jacobian diagram is the normal fan of the Newton polyhedron of
F = f * prod(F_i), obtained as a Minkowski sum of supports.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .errors import BoundaryDimensionError, SizeCapError
from .hull import rank
from .mixedpoly import MixedFunction, VariableSubset, conj_gradient, gradient
from .newton import (
    FaceData,
    NewtonPolyhedron,
    Point,
    build_polyhedron,
    hull_of_points,
    min_face_of_points,
)

STRICTLY_POSITIVE = "strictly-positive"
ELEMENTARY = "elementary"
VANISHING = "vanishing"
OTHER = "other-nonpositive"

INNER = "inner"
REGULAR_BOUNDARY = "regular-boundary"
VANISHING_BOUNDARY = "vanishing-boundary"

DEFAULT_MINKOWSKI_CAP = 200_000


@dataclass(frozen=True)
class FanVertex:
    weight: tuple[int, ...]
    normalized: tuple[Fraction, ...] | None
    face: FaceData
    kind: str
    vanishing_subset: VariableSubset | None = None

    @property
    def d(self) -> Fraction:
        return self.face.value


@dataclass(frozen=True)
class RegionClass:
    tag: str
    witness: FanVertex | None = None


@dataclass(frozen=True)
class JacobianDiagram:
    f: MixedFunction
    base: NewtonPolyhedron
    fan: tuple[FanVertex, ...]
    product_support: tuple[Point, ...]
    factors: tuple[str, ...]
    vertices: tuple[FanVertex, ...]
    regions: dict = field(compare=False)
    vjpp: tuple[FanVertex, ...] = ()

    @property
    def vj_plus(self) -> tuple[FanVertex, ...]:
        return tuple(v for v in self.vertices if v.kind == STRICTLY_POSITIVE)

    @property
    def v_plus(self) -> tuple[FanVertex, ...]:
        return tuple(v for v in self.fan if v.kind == STRICTLY_POSITIVE)


def _unit(n: int, i: int) -> tuple[int, ...]:
    return tuple(int(j == i) for j in range(n))


def classify_weight(points: Sequence[Point], weight: Sequence[int]) -> FanVertex:
    """FanVertex for a primitive weight, with its face on the given support."""
    n = len(weight)
    face = min_face_of_points(points, weight)
    d = face.value
    zeros = tuple(i for i, w in enumerate(weight) if w == 0)
    if not zeros:
        kind = STRICTLY_POSITIVE
    elif tuple(weight) in {_unit(n, i) for i in range(n)}:
        kind = ELEMENTARY
    elif d > 0:
        kind = VANISHING
    else:
        kind = OTHER
    hat = tuple(Fraction(w) / d for w in weight) if d > 0 else None
    subset = VariableSubset(zeros) if kind == VANISHING else None
    return FanVertex(tuple(weight), hat, face, kind, subset)


def _require_full_boundary(poly: NewtonPolyhedron):
    if poly.boundary_dim != poly.n - 1:
        raise BoundaryDimensionError(
            f"Newton boundary has dimension {poly.boundary_dim}, expected {poly.n - 1}"
        )


def fan_vertices(f: MixedFunction, poly: NewtonPolyhedron | None = None) -> list[FanVertex]:
    poly = poly or build_polyhedron(f)
    _require_full_boundary(poly)
    return [classify_weight(poly.points, fc.normal) for fc in poly.facets]


def vanishing_subspaces(f: MixedFunction) -> list[VariableSubset]:
    """Non-empty proper subsets I with f^I identically zero, by size then lexicographically.

    f^I vanishes iff no support point lives inside I, so the property is
    inherited by subsets; supersets of a non-vanishing set are skipped.
    """
    n = f.n
    supports = {frozenset(i for i, v in enumerate(p) if v) for p in f.support()}
    nonvanishing: list[frozenset] = []
    out = []
    for size in range(1, n):
        for combo in combinations(range(n), size):
            s = frozenset(combo)
            if any(nv <= s for nv in nonvanishing):
                continue
            if any(sp <= s for sp in supports):
                nonvanishing.append(s)
            else:
                out.append(VariableSubset(combo))
    return out


def hull_vertices(points: Sequence[Point], n: int) -> list[Point]:
    """Vertices of conv(points) + R_+^n."""
    pts = sorted(set(points))
    if n == 1:
        return [min(pts)]
    if len(pts) == 1:
        return pts
    facets = hull_of_points(pts, n)
    out = []
    for p in pts:
        normals = [fc.normal for fc in facets if p in fc.points]
        if rank(normals) == n:
            out.append(p)
    return out


def minkowski_support(supports: Sequence[Sequence[Point]], n: int, cap: int = DEFAULT_MINKOWSKI_CAP) -> list[Point]:
    """Vertices of the Minkowski sum of the Newton polyhedra of the given supports."""
    acc = hull_vertices(supports[0], n)
    for sup in supports[1:]:
        verts = hull_vertices(sup, n)
        if len(acc) * len(verts) > cap:
            raise SizeCapError(
                f"Minkowski sum would create {len(acc) * len(verts)} points (cap {cap})"
            )
        acc = hull_vertices({tuple(a + b for a, b in zip(p, q)) for p in acc for q in verts}, n)
    return acc


def derivative_factors(f: MixedFunction) -> list[tuple[str, MixedFunction]]:
    """Non-identically-zero Wirtinger derivatives, labelled f_i or f_~i (1-based)."""
    out = []
    for j, g in enumerate(gradient(f)):
        if not g.is_zero:
            out.append((f"f_{j + 1}", g))
    if not f.is_holomorphic:
        for j, g in enumerate(conj_gradient(f)):
            if not g.is_zero:
                out.append((f"f_~{j + 1}", g))
    return out


def region_class(f: MixedFunction, P: Sequence, fan: Sequence[FanVertex] | None = None) -> RegionClass:
    """Inner / regular-boundary / vanishing-boundary tag by face containment."""
    points = f.support()
    face = min_face_of_points(points, P)
    if face.value <= 0:
        raise ValueError("region classification needs d(P, f) > 0")
    if fan is None:
        fan = fan_vertices(f)
    for v in fan:
        if v.kind == VANISHING and face.points <= v.face.points:
            return RegionClass(VANISHING_BOUNDARY, v)
    for i in range(f.n):
        e = classify_weight(points, _unit(f.n, i))
        if face.points <= e.face.points:
            return RegionClass(REGULAR_BOUNDARY, e)
    return RegionClass(INNER, None)


def jacobian_diagram(f: MixedFunction, cap: int = DEFAULT_MINKOWSKI_CAP) -> JacobianDiagram:
    base = build_polyhedron(f)
    fan = tuple(fan_vertices(f, base))
    factors = derivative_factors(f)
    supports = [f.support()] + [g.support() for _, g in factors]
    product = tuple(minkowski_support(supports, f.n, cap))
    points = base.points
    vertices = tuple(
        classify_weight(points, fc.normal) for fc in hull_of_points(product, f.n)
    )
    regions = {}
    vjpp = []
    for v in vertices:
        if v.kind != STRICTLY_POSITIVE:
            continue
        rc = region_class(f, v.weight, fan)
        regions[v.weight] = rc
        if rc.tag == VANISHING_BOUNDARY:
            vjpp.append(v)
    return JacobianDiagram(
        f, base, fan, product, tuple(name for name, _ in factors), vertices, regions, tuple(vjpp)
    )
