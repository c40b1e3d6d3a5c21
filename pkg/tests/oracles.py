"""Brute-force reference computations, kept apart from the library code paths."""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

import numpy as np

from lct_kit.ideal import MonomialIdeal
from lct_kit.newton import facets_by_enumeration


def naive_minimal(vectors):
    vs = set(map(tuple, vectors))
    return sorted(
        (v for v in vs if not any(u != v and all(a <= b for a, b in zip(u, v)) for u in vs)),
        reverse=True,
    )


def naive_power(gens, t):
    out = {tuple([0] * len(gens[0]))}
    for _ in range(t):
        out = {tuple(a + b for a, b in zip(u, g)) for u in out for g in gens}
    return naive_minimal(out)


def brute_colength(ideal: MonomialIdeal) -> int:
    box = [range(a) for a in ideal.pure_power_exponents()]
    return sum(
        1
        for v in itertools.product(*box)
        if not any(all(g_i <= v_i for g_i, v_i in zip(g, v)) for g in ideal.generators)
    )


def brute_contact(gens, n, target, lo=0):
    """min sum(nu) over nu in [lo, target]^n with <nu, g> >= target."""
    best = None
    for nu in itertools.product(range(lo, target + 1), repeat=n):
        if all(sum(a * b for a, b in zip(nu, g)) >= target for g in gens):
            s = sum(nu)
            if best is None or s < best:
                best = s
    return best


def outside_count(ideal: MonomialIdeal, normals, t: int) -> int:
    """Lattice points of the orthant not in t * P."""
    A = ideal.pure_power_exponents()
    shape = tuple(t * a + 1 for a in A)
    grid = np.indices(shape).reshape(ideal.n, -1).T
    keep = np.zeros(grid.shape[0], dtype=bool)
    for w in normals:
        den = math.lcm(*(x.denominator for x in w))
        W = np.array([int(x * den) for x in w])
        keep |= grid @ W < t * den
    return int(keep.sum())


def ehrhart_multiplicity(ideal: MonomialIdeal) -> int:
    """n! * covolume as the n-th finite difference of the outside count.

    The count is a polynomial of degree n in t (difference of Ehrhart
    polynomials of a box and of P cut by that box, both lattice polytopes),
    with leading coefficient the covolume.
    """
    normals = facets_by_enumeration(ideal)
    n = ideal.n
    vals = [outside_count(ideal, normals, t) for t in range(n + 1)]
    return sum((-1) ** (n - k) * math.comb(n, k) * v for k, v in enumerate(vals))


def shoelace_covolume(ideal: MonomialIdeal) -> Fraction:
    """Area under the lower hull of a zero-dimensional ideal in two variables."""
    assert ideal.n == 2
    pts = sorted(ideal.generators)  # increasing x, so y decreasing
    hull: list[tuple[int, int]] = []
    for p in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop hull[-1] unless it lies strictly below segment hull[-2] -> p
            if (x2 - x1) * (p[1] - y1) - (y2 - y1) * (p[0] - x1) <= 0:
                hull.pop()
            else:
                break
        hull.append(p)
    poly = [(0, 0)] + hull
    area2 = 0
    for (x1, y1), (x2, y2) in zip(poly, poly[1:] + poly[:1]):
        area2 += x1 * y2 - x2 * y1
    return Fraction(abs(area2), 2)
