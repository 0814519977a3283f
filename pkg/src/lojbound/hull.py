"""Exact integer polyhedral primitives.

Facets are found with the double-description method: for a full-dimensional
cone C = cone(g_1..g_m) in Z^d, the facet normals of C are the extreme rays of
the dual cone {y : g_k . y >= 0}. Rays are kept primitive, so every number
stays a small integer and no rational arithmetic is needed.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

Vector = tuple[int, ...]


def primitive(v: Sequence[int]) -> Vector:
    g = 0
    for x in v:
        g = gcd(g, int(x))
    if g == 0:
        return tuple(int(x) for x in v)
    return tuple(int(x) // g for x in v)


def primitive_rational(v: Sequence[Fraction]) -> Vector:
    """Smallest positive integer multiple of a rational vector."""
    den = 1
    for x in v:
        x = Fraction(x)
        den = den * x.denominator // gcd(den, x.denominator)
    return primitive([int(Fraction(x) * den) for x in v])


def dot(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, b))


def rank(vectors: Sequence[Sequence]) -> int:
    """Rank over Q by fraction-free elimination."""
    rows = [[Fraction(x) for x in v] for v in vectors]
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                fct = rows[i][c] / rows[r][c]
                rows[i] = [a - fct * b for a, b in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


def affine_dimension(points: Sequence[Sequence], directions: Sequence[Sequence] = ()) -> int:
    """Dimension of aff(points) + span(directions); -1 for the empty set."""
    pts = list(points)
    if not pts:
        return -1
    base = pts[0]
    vecs = [tuple(a - b for a, b in zip(p, base)) for p in pts[1:]]
    vecs.extend(tuple(d) for d in directions)
    return rank(vecs)


def _solve_inverse_columns(rows: list[Vector]) -> list[Vector]:
    """Integer columns r_j with rows[i] . r_j = 0 (i != j) and > 0 (i == j)."""
    d = len(rows)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(d)]
           for i, row in enumerate(rows)]
    for c in range(d):
        piv = next(i for i in range(c, d) if aug[i][c] != 0)
        aug[c], aug[piv] = aug[piv], aug[c]
        pv = aug[c][c]
        aug[c] = [x / pv for x in aug[c]]
        for i in range(d):
            if i != c and aug[i][c] != 0:
                fct = aug[i][c]
                aug[i] = [a - fct * b for a, b in zip(aug[i], aug[c])]
    inv = [row[d:] for row in aug]
    cols = []
    for j in range(d):
        cols.append(primitive_rational([inv[i][j] for i in range(d)]))
    return cols


def _independent_subset(gens: list[Vector]) -> list[int]:
    chosen: list[int] = []
    basis: list[Vector] = []
    d = len(gens[0])
    for k, g in enumerate(gens):
        if rank(basis + [g]) > len(basis):
            basis.append(g)
            chosen.append(k)
            if len(chosen) == d:
                break
    return chosen


def cone_facets(generators: Sequence[Sequence[int]]) -> list[tuple[Vector, frozenset[int]]]:
    """Facet normals of the full-dimensional cone spanned by ``generators``.

    Returns (y, Z) pairs where y is a primitive inward normal (y . g >= 0 for
    every generator) and Z is the set of generator indices with y . g = 0.
    """
    gens = [tuple(int(x) for x in g) for g in generators]
    if not gens:
        raise ValueError("no generators")
    d = len(gens[0])
    init = _independent_subset(gens)
    if len(init) < d:
        raise ValueError("generators do not span a full-dimensional cone")
    cols = _solve_inverse_columns([gens[k] for k in init])
    # zero sets are bitmasks over generator indices already processed
    rays: list[Vector] = []
    zeros: list[int] = []
    for j, r in enumerate(cols):
        mask = 0
        for i, k in enumerate(init):
            if i != j:
                mask |= 1 << k
        rays.append(r)
        zeros.append(mask)
    done = set(init)
    for k, g in enumerate(gens):
        if k in done:
            continue
        vals = [dot(g, r) for r in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        bit = 1 << k
        new_rays: list[Vector] = []
        new_zeros: list[int] = []
        for i, v in enumerate(vals):
            if v >= 0:
                new_rays.append(rays[i])
                new_zeros.append(zeros[i] | (bit if v == 0 else 0))
        if neg:
            for p in pos:
                for q in neg:
                    common = zeros[p] & zeros[q]
                    if bin(common).count("1") < d - 2:
                        continue
                    if any(
                        (zeros[r] & common) == common
                        for r in range(len(rays)) if r != p and r != q
                    ):
                        continue
                    vp, vq = vals[p], vals[q]
                    nr = primitive([vp * a - vq * b for a, b in zip(rays[q], rays[p])])
                    new_rays.append(nr)
                    new_zeros.append(common | bit)
        rays, zeros = new_rays, new_zeros
        done.add(k)
    out = []
    for r, z in zip(rays, zeros):
        out.append((r, frozenset(i for i in range(len(gens)) if (z >> i) & 1)))
    return out


def upper_hull_facets(points: Sequence[Sequence[int]], recession: Sequence[Sequence[int]]):
    """Facets of conv(points) + cone(recession) as (normal, offset, point indices).

    ``normal . x >= offset`` on the polyhedron; the index set lists the
    members of ``points`` attaining equality. Requires a full-dimensional
    polyhedron. Facets with zero normal (the face at infinity) are omitted.
    """
    gens = [(1,) + tuple(p) for p in points] + [(0,) + tuple(r) for r in recession]
    npts = len(points)
    out = []
    for y, z in cone_facets(gens):
        w = y[1:]
        if not any(w):
            continue
        out.append((w, -y[0], frozenset(i for i in z if i < npts)))
    return out
