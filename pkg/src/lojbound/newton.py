"""Newton polyhedron Gamma_+(f) = conv(support) + R_+^n with exact facets and faces."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .errors import ZeroFunctionError
from .hull import affine_dimension, dot, primitive_rational, upper_hull_facets
from .mixedpoly import ExponentPair, MixedFunction

MAX_DIMENSION = 6

Point = tuple[int, ...]


@dataclass(frozen=True)
class SupportPoint:
    coords: Point
    sources: frozenset[ExponentPair]


@dataclass(frozen=True)
class Facet:
    normal: tuple[int, ...]
    offset: int
    points: frozenset[Point]

    @property
    def strictly_positive(self) -> bool:
        return all(x > 0 for x in self.normal)


@dataclass(frozen=True)
class FaceData:
    """Face of Gamma_+ picked out by a weight.

    ``dim`` is the affine dimension of the support points on the face;
    ``face_dim`` also counts the recession directions e_i with p_i = 0, so it
    is the dimension of the (possibly unbounded) face itself.
    """

    points: frozenset[Point]
    dim: int
    value: Fraction
    weight: tuple[Fraction, ...]
    face_dim: int

    @property
    def compact(self) -> bool:
        return all(p > 0 for p in self.weight)


@dataclass(frozen=True)
class NewtonPolyhedron:
    n: int
    support: tuple[SupportPoint, ...]
    facets: tuple[Facet, ...]

    @cached_property
    def points(self) -> tuple[Point, ...]:
        return tuple(s.coords for s in self.support)

    @cached_property
    def compact_faces(self) -> tuple[tuple[frozenset[Point], tuple[int, ...]], ...]:
        """All compact faces as (point set, relative-interior integer weight).

        Faces are intersections of facets. A face is compact iff no
        coordinate direction e_i recedes inside it, i.e. some containing
        facet has a positive i-th normal entry for every i.
        """
        n = self.n
        # generator set of a facet: its points plus the rays e_i with w_i = 0
        fac_sets = []
        for fc in self.facets:
            rays = frozenset(i for i, w in enumerate(fc.normal) if w == 0)
            fac_sets.append((fc.points, rays))
        faces: dict[tuple[frozenset, frozenset], set[int]] = {}
        frontier = []
        for k, key in enumerate(fac_sets):
            if key not in faces:
                faces[key] = {k}
                frontier.append(key)
            else:
                faces[key].add(k)
        while frontier:
            nxt = []
            for pts, rays in frontier:
                for k, (fp, fr) in enumerate(fac_sets):
                    ip = pts & fp
                    if not ip:
                        continue
                    key = (ip, rays & fr)
                    if key not in faces:
                        faces[key] = set()
                        nxt.append(key)
            frontier = nxt
        # a face's containing facets are those whose generator sets include it
        out = []
        for (pts, rays) in faces:
            if rays:
                continue
            w = [0] * n
            for (fp, fr), fc in zip(fac_sets, self.facets):
                if pts <= fp:
                    w = [a + b for a, b in zip(w, fc.normal)]
            out.append((pts, tuple(w)))
        out.sort(key=lambda t: (len(t[0]), sorted(t[0])))
        return tuple(out)

    @cached_property
    def boundary_dim(self) -> int:
        return max(affine_dimension(sorted(p)) for p, _ in self.compact_faces)

    def min_face(self, P: Sequence) -> FaceData:
        return min_face(self, P)


def padding_constant(points: Sequence[Point], n: int) -> int:
    return 1 + (n + 1) * max((max(p) for p in points), default=0)


def hull_of_points(points: Sequence[Point], n: int) -> list[Facet]:
    """Facets of conv(points) + R_+^n with non-negative non-zero normals.

    The hull runs on the padded set {s} U {s + D e_i}; this is exact and
    has the same non-negative facets as the polyhedron with recession cone.
    """
    pts = sorted(set(tuple(p) for p in points))
    if n > MAX_DIMENSION:
        raise ValueError(f"dimension {n} exceeds the supported maximum {MAX_DIMENSION}")
    if n == 1:
        lo = min(p[0] for p in pts)
        return [Facet((1,), lo, frozenset(p for p in pts if p[0] == lo))]
    D = padding_constant(pts, n)
    padded = list(pts)
    for s in pts:
        for i in range(n):
            padded.append(tuple(x + (D if j == i else 0) for j, x in enumerate(s)))
    padded = sorted(set(padded))
    facets = []
    for w, off, idx in upper_hull_facets(padded, []):
        if any(x < 0 for x in w):
            continue
        face = frozenset(p for p in pts if dot(w, p) == off)
        if face:
            facets.append(Facet(w, off, face))
    facets.sort(key=lambda fc: fc.normal)
    return facets


def build_polyhedron(f: MixedFunction) -> NewtonPolyhedron:
    if f.is_zero:
        raise ZeroFunctionError("Newton polyhedron of the zero function")
    groups: dict[Point, set[ExponentPair]] = {}
    for e, _ in f.terms:
        groups.setdefault(e.combined, set()).add(e)
    support = tuple(SupportPoint(p, frozenset(src)) for p, src in sorted(groups.items()))
    facets = hull_of_points([s.coords for s in support], f.n)
    return NewtonPolyhedron(f.n, support, tuple(facets))


def min_face_of_points(points: Sequence[Point], P: Sequence) -> FaceData:
    W = tuple(Fraction(p) for p in P)
    if any(p < 0 for p in W) or not any(W):
        raise ValueError("weight must be non-negative and non-zero")
    vals = [sum((a * b for a, b in zip(W, pt)), Fraction(0)) for pt in points]
    d = min(vals)
    face = frozenset(pt for pt, v in zip(points, vals) if v == d)
    rays = [tuple(int(j == i) for j in range(len(W))) for i, p in enumerate(W) if p == 0]
    pts = sorted(face)
    return FaceData(face, affine_dimension(pts), d, W, affine_dimension(pts, rays))


def min_face(poly: NewtonPolyhedron, P: Sequence) -> FaceData:
    return min_face_of_points(poly.points, P)


def boundary_dimension(poly: NewtonPolyhedron) -> int:
    return poly.boundary_dim


def weight_of(P: Sequence) -> tuple[int, ...]:
    """Primitive integer representative of a non-negative rational weight."""
    return primitive_rational([Fraction(p) for p in P])
