"""Arithmetic certificate for superrigidity of degree-N hypersurfaces in P^N.

Starting from a non-canonical center with ``c < 1/r``, the argument pushes
``V|_Y`` forward to a divisor of degree ``N r^2`` in ``P^(N-3)`` and bounds
its threshold through the cone bound with ``e = N - 3`` (``4 <= N <= 6``)
or ``e = 3`` (``N >= 7``).  That yields ``c^2/4 >= coeff / r^2`` with
``coeff = e / N``.  Combined with ``c^2 r^2 < 1`` this is contradictory
exactly when ``4 * coeff >= 1``; ``r`` drops out after squaring, so the
whole certificate is rational arithmetic on ``N``.

Boundary rows (``margin = 0``, ``N = 4`` and ``N = 12``) still certify:
``c`` is strictly below ``1/r``, so ``c^2 r^2 >= 4 * coeff = 1`` is already
impossible.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

NARRATIVE = (
    "pushforward of V|_Y is a divisor of degree N*r^2 in P^(N-3); "
    "points with e_y > 2r^2 form a set of dimension <= max(N-6, 0); "
    "the pair (P^(N-3), c^2/4 * pi_*[V|_Y]) is log terminal where e_y <= 4r^2"
)


@dataclass(frozen=True)
class RigidityCase:
    N: int
    case: str
    pushforward_degree_coeff: int
    codim: int
    lct_lower_bound_coeff: Fraction
    margin: Fraction

    @property
    def contradiction(self) -> bool:
        return self.margin >= 0

    @property
    def in_stated_range(self) -> bool:
        return 4 <= self.N <= 12

    def to_json(self) -> dict:
        return {
            "N": self.N,
            "case": self.case,
            "pushforward_degree_coeff": self.pushforward_degree_coeff,
            "e": self.codim,
            "lct_lower_bound_coeff": str(self.lct_lower_bound_coeff),
            "margin": str(self.margin),
            "contradiction": self.contradiction,
        }


def superrigidity_certificate(N: int) -> RigidityCase:
    if N < 4:
        raise ValueError(f"N must be at least 4, got {N}")
    if N <= 6:
        case, e = "low", N - 3
    else:
        case, e = "high", 3
    coeff = Fraction(e, N)
    return RigidityCase(N, case, N, e, coeff, 4 * coeff - 1)


def rigidity_range(n_min: int, n_max: int) -> list[RigidityCase]:
    if not 4 <= n_min <= n_max:
        raise ValueError(f"need 4 <= n_min <= n_max, got [{n_min}, {n_max}]")
    rows = [superrigidity_certificate(N) for N in range(n_min, n_max + 1)]
    for r in rows:
        if r.contradiction != (4 <= r.N <= 12):
            raise AssertionError(f"certificate disagrees with 4 <= N <= 12 at N = {r.N}")
    return rows
