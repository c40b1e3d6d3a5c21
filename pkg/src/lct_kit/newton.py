"""Newton polyhedra of monomial ideals.

``P(I) = conv(generators) + R^n_{>=0}``.  Facets are found by the double
description method run on the dual of the homogenized cone, entirely in
integer arithmetic.  Every facet not lying on a coordinate hyperplane is
stored as a normal ``w >= 0`` scaled so the facet inequality reads
``<w, u> >= 1``; a zero entry ``w_i = 0`` means the facet contains the ray
along axis ``i``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .ideal import ExpVec, IdealError, InfiniteColengthError, MonomialIdeal

Normal = tuple[Fraction, ...]


@dataclass(frozen=True)
class NewtonPolyhedron:
    n: int
    facets: tuple[Normal, ...]
    vertices: tuple[ExpVec, ...]
    source: MonomialIdeal
    # axes i for which {u_i = 0} carries a facet of P
    coordinate_facets: tuple[int, ...] = ()
    _tight: tuple[frozenset[int], ...] = field(default=(), repr=False, compare=False)
    _coord_tight: tuple[frozenset[int], ...] = field(default=(), repr=False, compare=False)

    def value(self, w: Normal, u: Sequence) -> Fraction:
        return sum((wi * ui for wi, ui in zip(w, u)), Fraction(0))

    def bounded_facets(self) -> list[int]:
        """Indices of facets with no tight ray (all ``w_i > 0``)."""
        return [k for k, w in enumerate(self.facets) if all(x > 0 for x in w)]

    def tight_vertices(self, k: int) -> frozenset[int]:
        return self._tight[k]


# -- exact linear algebra on small matrices ---------------------------------


def _rank(rows: Sequence[Sequence]) -> int:
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return 0
    rank, ncols = 0, len(m[0])
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(m)) if m[r][col] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        for r in range(rank + 1, len(m)):
            if m[r][col]:
                f = m[r][col] / m[rank][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def _affine_dim(points: Sequence[Sequence]) -> int:
    if not points:
        return -1
    p0 = points[0]
    return _rank([[a - b for a, b in zip(p, p0)] for p in points[1:]])


def det_int(matrix: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant of an integer matrix."""
    a = [list(r) for r in matrix]
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


# -- double description -------------------------------------------------------


def _primitive(v: list[int]) -> tuple[int, ...]:
    g = 0
    for x in v:
        g = math.gcd(g, x)
    return tuple(x // g for x in v) if g > 1 else tuple(v)


def _dual_extreme_rays(points: list[ExpVec], n: int) -> list[tuple[int, ...]]:
    """Extreme rays of {y : <y, x> >= 0} for x in the homogenized generators.

    The cone is generated by ``(g, 1)`` for each point and ``(e_i, 0)`` for
    each axis.  The first point seeds a simplicial start; remaining points are
    inserted one at a time with the combinatorial adjacency test.
    """
    d = n + 1
    g0 = points[0]
    rays: list[tuple[int, ...]] = []
    tight: list[int] = []
    # constraint indices: axes 0..n-1, then points from n onward
    for i in range(n):
        r = [0] * d
        r[i] = 1
        r[n] = -g0[i]
        rays.append(tuple(r))
    rays.append(tuple([0] * n + [1]))
    full = (1 << (n + 1)) - 1
    for i in range(n):
        tight.append(full & ~(1 << i))
    tight.append(full & ~(1 << n))

    for k, g in enumerate(points[1:], start=n + 1):
        a = tuple(g) + (1,)
        vals = [sum(x * y for x, y in zip(r, a)) for r in rays]
        if all(v >= 0 for v in vals):
            continue
        pos = [j for j, v in enumerate(vals) if v > 0]
        neg = [j for j, v in enumerate(vals) if v < 0]
        zero = [j for j, v in enumerate(vals) if v == 0]
        new_rays = [rays[j] for j in pos] + [rays[j] for j in zero]
        new_tight = [tight[j] for j in pos] + [tight[j] | (1 << k) for j in zero]
        for p in pos:
            for q in neg:
                common = tight[p] & tight[q]
                if common.bit_count() < d - 2:
                    continue
                if any(
                    j != p and j != q and (tight[j] & common) == common
                    for j in range(len(rays))
                ):
                    continue
                vp, vq = vals[p], -vals[q]
                combo = _primitive([vp * y + vq * x for x, y in zip(rays[p], rays[q])])
                new_rays.append(combo)
                new_tight.append(common | (1 << k))
        rays, tight = new_rays, new_tight
    return rays


def _seed_order(ideal: MonomialIdeal) -> list[ExpVec]:
    # Pure powers first: they cut the polyhedron down fastest, so most later
    # points are recognised as redundant without touching the ray list.
    def key(g: ExpVec):
        support = sum(1 for e in g if e)
        return (support != 1, sum(g), g)

    return sorted(ideal.generators, key=key)


@lru_cache(maxsize=4096)
def build_polyhedron(ideal: MonomialIdeal) -> NewtonPolyhedron:
    """Facets and vertices of the Newton polyhedron of ``ideal``."""
    n = ideal.n
    if any(sum(g) == 0 for g in ideal.generators):
        raise IdealError("the unit ideal has no Newton polyhedron facets")
    pts = _seed_order(ideal)
    rays = _dual_extreme_rays(pts, n)

    normals: set[Normal] = set()
    coord: set[int] = set()
    for r in rays:
        w, y0 = r[:n], r[n]
        if y0 < 0:
            normals.add(tuple(Fraction(x, -y0) for x in w))
        elif y0 == 0:
            support = [i for i, x in enumerate(w) if x]
            if len(support) == 1:
                coord.add(support[0])
    facets = tuple(sorted(normals))
    coordinate_facets = tuple(sorted(coord))

    gens = ideal.generators
    vertices = []
    for g in gens:
        tight_normals = [w for w in facets if sum(a * b for a, b in zip(w, g)) == 1]
        tight_normals += [
            tuple(int(i == j) for j in range(n)) for i in coordinate_facets if g[i] == 0
        ]
        if _rank(tight_normals) == n:
            vertices.append(g)
    vertices_t = tuple(sorted(vertices))

    tight = tuple(
        frozenset(
            k for k, v in enumerate(vertices_t) if sum(a * b for a, b in zip(w, v)) == 1
        )
        for w in facets
    )
    coord_tight = tuple(
        frozenset(k for k, v in enumerate(vertices_t) if v[i] == 0) for i in coordinate_facets
    )
    return NewtonPolyhedron(n, facets, vertices_t, ideal, coordinate_facets, tight, coord_tight)


def membership(P: NewtonPolyhedron, u: Sequence, strict: bool = False) -> bool:
    """Whether ``u`` lies in ``P`` (in its interior when ``strict``)."""
    if len(u) != P.n:
        raise IdealError(f"point of length {len(u)} in a polyhedron of dimension {P.n}")
    u = [Fraction(x) for x in u]
    for w in P.facets:
        val = P.value(w, u)
        if val < 1 or (strict and val == 1):
            return False
    if strict and any(u[i] <= 0 for i in P.coordinate_facets):
        return False
    return True


# -- volumes -----------------------------------------------------------------


def _triangulate(P: NewtonPolyhedron, face: frozenset[int], dim: int, cache: dict) -> list[tuple[int, ...]]:
    """Pulling triangulation of a bounded face given by its vertex set."""
    if face in cache:
        return cache[face]
    if dim == 0:
        out = [tuple(face)]
    else:
        v0 = min(face)
        subfaces = set()
        for vs in P._tight + P._coord_tight:
            s = face & vs
            if s == face or v0 in s or len(s) < dim:
                continue
            if s in subfaces:
                continue
            if _affine_dim([P.vertices[k] for k in sorted(s)]) == dim - 1:
                subfaces.add(s)
        out = []
        for s in sorted(subfaces, key=sorted):
            for simplex in _triangulate(P, s, dim - 1, cache):
                out.append((v0,) + simplex)
    cache[face] = out
    return out


def facet_simplices(P: NewtonPolyhedron) -> list[tuple[int, list[tuple[int, ...]]]]:
    """Per bounded facet, the (n-1)-simplices of its triangulation."""
    cache: dict = {}
    return [(k, _triangulate(P, P._tight[k], P.n - 1, cache)) for k in P.bounded_facets()]


def covolume(P: NewtonPolyhedron) -> Fraction:
    """Exact volume of ``R^n_{>=0} \\ P``."""
    if not P.source.is_zero_dimensional:
        raise InfiniteColengthError(f"{P.source} is not zero-dimensional: unbounded complement")
    total = 0
    for _, simplices in facet_simplices(P):
        for s in simplices:
            total += abs(det_int([P.vertices[k] for k in s]))
    return Fraction(total, math.factorial(P.n))


def samuel_multiplicity(ideal: MonomialIdeal) -> int:
    vol = covolume(build_polyhedron(ideal)) * math.factorial(ideal.n)
    if vol.denominator != 1:
        raise ArithmeticError(f"n! * covolume = {vol} is not an integer")
    return vol.numerator


# -- brute force oracle --------------------------------------------------------


def facets_by_enumeration(ideal: MonomialIdeal) -> tuple[Normal, ...]:
    """Offset-1 facet normals by trying every n-subset of points and rays.

    Exponential, independent of the double description code; used to check
    it on small inputs.
    """
    import itertools

    n = ideal.n
    items = [("p", g) for g in ideal.generators] + [("r", i) for i in range(n)]
    found: set[Normal] = set()
    for combo in itertools.combinations(items, n):
        pts = [g for kind, g in combo if kind == "p"]
        rays = [i for kind, i in combo if kind == "r"]
        if not pts:
            continue
        # solve <w, p> = 1 for points, w_i = 0 for rays
        rows = [[Fraction(x) for x in p] + [Fraction(1)] for p in pts]
        rows += [[Fraction(int(j == i)) for j in range(n)] + [Fraction(0)] for i in rays]
        w = _solve(rows, n)
        if w is None or any(x < 0 for x in w):
            continue
        if all(sum(a * b for a, b in zip(w, g)) >= 1 for g in ideal.generators):
            tight_pts = [g for g in ideal.generators if sum(a * b for a, b in zip(w, g)) == 1]
            tight_dirs = [tuple(int(j == i) for j in range(n)) for i in range(n) if w[i] == 0]
            span = [[a - b for a, b in zip(p, tight_pts[0])] for p in tight_pts[1:]] + tight_dirs
            if _rank(span) == n - 1:
                found.add(w)
    return tuple(sorted(found))


def _solve(rows: list[list[Fraction]], n: int) -> tuple[Fraction, ...] | None:
    m = [r[:] for r in rows]
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return None
        m[col], m[pivot] = m[pivot], m[col]
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col] / m[col][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return tuple(m[i][n] / m[i][i] for i in range(n))
