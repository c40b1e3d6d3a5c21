"""Log canonical thresholds, log terminality of monomial pairs, multiplier ideals.

All criteria are read off the facets of the Newton polyhedron: a facet
``<w, u> >= 1`` with ``w_i = 1/a_i`` is the hyperplane ``sum u_i / a_i = 1``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .ideal import IdealError, MonomialIdeal, minimalize, parse_rat
from .newton import Normal, build_polyhedron

INFINITE_CODIM = math.inf


@dataclass(frozen=True)
class PairSpec:
    """The pair ``(A^n, (1/mu)(V + sum_i b_i H_i))`` with ``H_i = {x_i = 0}``.

    Negative ``b_i`` subtract a multiple of ``H_i``.
    """

    ideal: MonomialIdeal
    b: tuple[Fraction, ...]
    mu: Fraction

    def __post_init__(self):
        if len(self.b) != self.ideal.n:
            raise IdealError(f"need {self.ideal.n} boundary coefficients, got {len(self.b)}")
        if self.mu <= 0:
            raise ValueError(f"mu must be positive, got {self.mu}")
        if self.mu < max(self.b):
            raise ValueError(f"mu = {self.mu} is below max b_i = {max(self.b)}")

    @classmethod
    def make(cls, ideal: MonomialIdeal, b: Sequence, mu) -> "PairSpec":
        return cls(ideal, tuple(parse_rat(x) for x in b), parse_rat(mu))

    def to_json(self) -> dict:
        data = self.ideal.to_json()
        data["b"] = [str(x) for x in self.b]
        data["mu"] = str(self.mu)
        return data


@dataclass(frozen=True)
class MultiplierIdealResult:
    c: Fraction
    ideal: MonomialIdeal

    @property
    def trivial(self) -> bool:
        return self.ideal.is_unit


def lct(ideal: MonomialIdeal) -> Fraction:
    """Log canonical threshold: least coordinate sum over normalized facet normals."""
    if ideal.is_unit:
        raise IdealError("the unit ideal has infinite log canonical threshold")
    P = build_polyhedron(ideal)
    if not P.facets:
        raise IdealError(f"{ideal} has an empty facet list")
    return min(sum(w) for w in P.facets)


def lct_facets(ideal: MonomialIdeal) -> list[Normal]:
    """Facet normals achieving the threshold."""
    P = build_polyhedron(ideal)
    c = lct(ideal)
    return [w for w in P.facets if sum(w) == c]


def pair_facet_values(p: PairSpec) -> list[tuple[Fraction, Normal]]:
    P = build_polyhedron(p.ideal)
    return [
        (sum(((p.mu - bi) * wi for bi, wi in zip(p.b, w)), Fraction(0)), w)
        for w in P.facets
    ]


def is_log_terminal_pair(p: PairSpec) -> bool:
    """Log terminality of the monomial pair ``p``.

    Not log terminal iff some facet has ``sum (mu - b_i) w_i <= 1``.  A
    boundary coefficient ``b_i = mu`` on an axis whose hyperplane is a facet of
    the polyhedron puts ``H_i`` in the pair with coefficient one, which is
    never log terminal either.
    """
    if any(val <= 1 for val, _ in pair_facet_values(p)):
        return False
    P = build_polyhedron(p.ideal)
    return all(p.mu > p.b[i] for i in P.coordinate_facets)


def pair_threshold(ideal: MonomialIdeal, b: Sequence[Fraction]) -> tuple[Fraction, Normal]:
    """Largest ``mu`` for which the pair with boundary ``b`` fails to be log terminal.

    Each facet is non-log-terminal for ``mu <= (1 + <b, w>) / sum(w)``; the
    threshold is the largest of these, returned with its facet.
    """
    P = build_polyhedron(ideal)
    best = None
    for w in P.facets:
        mu = (1 + sum((bi * wi for bi, wi in zip(b, w)), Fraction(0))) / sum(w)
        if best is None or mu > best[0]:
            best = (mu, w)
    return best


def _integer_facets(normals: Sequence[Normal]) -> tuple[np.ndarray, np.ndarray]:
    # w = W_k / D_k with integer rows, so comparisons stay exact
    rows, dens = [], []
    for w in normals:
        den = math.lcm(*(x.denominator for x in w))
        rows.append([int(x * den) for x in w])
        dens.append(den)
    return np.asarray(rows, dtype=np.int64), np.asarray(dens, dtype=np.int64)


def multiplier_ideal(ideal: MonomialIdeal, c) -> MultiplierIdealResult:
    """Multiplier ideal of ``ideal^c``: monomials ``x^v`` with ``v + 1`` in the
    interior of ``c * P``."""
    c = parse_rat(c)
    if c < 0:
        raise ValueError(f"exponent must be non-negative, got {c}")
    n = ideal.n
    if ideal.is_unit:
        return MultiplierIdealResult(c, ideal)
    P = build_polyhedron(ideal)
    W, D = _integer_facets(P.facets)
    # A minimal generator v with v_i > 0 fails some facet at v - e_i, which
    # forces w_i * v_i <= c; this bounds every coordinate.
    box = []
    for i in range(n):
        pos = [w[i] for w in P.facets if w[i] > 0]
        box.append(math.floor(c / min(pos)) if pos else 0)
    shape = tuple(b + 1 for b in box)
    grid = np.indices(shape, dtype=np.int64).reshape(n, -1).T
    lhs = c.denominator * ((grid + 1) @ W.T)
    inside = np.all(lhs > c.numerator * D, axis=1).reshape(shape)
    # x^v is a minimal generator iff x^v is in J and no x^(v - e_i) is
    minimal = inside.copy()
    for i in range(n):
        below = np.zeros(shape, dtype=bool)
        src = [slice(None)] * n
        dst = [slice(None)] * n
        src[i], dst[i] = slice(0, -1), slice(1, None)
        below[tuple(dst)] = inside[tuple(src)]
        minimal &= ~below
    gens = [tuple(int(x) for x in v) for v in np.argwhere(minimal)]
    if not gens:
        raise AssertionError("multiplier ideal search box contained no monomial of the ideal")
    return MultiplierIdealResult(c, minimalize(gens, n))


def zero_locus_components(ideal: MonomialIdeal) -> list[frozenset[int]]:
    """Irreducible components of V(ideal) as variable sets S with locus {x_S = 0}.

    These are the minimal sets of variables meeting the support of every
    generator.  The unit ideal has no components.
    """
    if ideal.is_unit:
        return []
    supports = [frozenset(i for i, e in enumerate(g) if e) for g in ideal.generators]
    found: list[frozenset[int]] = []
    for size in range(1, ideal.n + 1):
        for S in itertools.combinations(range(ideal.n), size):
            s = frozenset(S)
            if any(f <= s for f in found):
                continue
            if all(sup & s for sup in supports):
                found.append(s)
    return found


def non_lt_locus_codim(ideal: MonomialIdeal, c) -> int | float:
    """Codimension of the zero locus of the multiplier ideal at ``c``.

    Returns :data:`INFINITE_CODIM` when the locus is empty.
    """
    J = multiplier_ideal(ideal, c)
    if J.trivial:
        return INFINITE_CODIM
    return min(len(s) for s in zero_locus_components(J.ideal))


def restrict_to_variables(ideal: MonomialIdeal, variables: Sequence[int]) -> MonomialIdeal:
    """The ideal viewed in the listed variables; generators must not use others."""
    keep = list(variables)
    for g in ideal.generators:
        if any(e for i, e in enumerate(g) if i not in keep):
            raise IdealError(f"generator {g} uses variables outside {keep}")
    return minimalize([tuple(g[i] for i in keep) for g in ideal.generators], len(keep))


def extend_variables(ideal: MonomialIdeal, extra: int) -> MonomialIdeal:
    """Pull back along the projection forgetting ``extra`` trailing coordinates."""
    return minimalize([g + (0,) * extra for g in ideal.generators], ideal.n + extra)
