"""Jet-scheme side of the threshold: contact orders of arcs.

An arc with ``ord_t x_i = nu_i`` pulls ``x^g`` back to order ``<nu, g>``, so
the arcs along which ``I`` vanishes to order ``>= m`` have codimension
``min sum(nu)`` over integer ``nu >= 0`` with ``<nu, g> >= m`` for every
generator.  These small covering programs are solved by depth-first search
with no reference to the Newton polyhedron, which makes the resulting
threshold an independent check on :func:`lct_kit.thresholds.lct`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .ideal import ExpVec, IdealError, MonomialIdeal
from .report import BoundReport
from .thresholds import lct_facets


class Infeasible(Exception):
    pass


def _min_weight(
    gens: tuple[ExpVec, ...], n: int, target: int, lo: int = 0, lower: int = 0
) -> tuple[int, ExpVec]:
    """Least ``sum(nu)`` with ``<nu, g> >= target`` for all ``g``, ``lo <= nu_i <= target``.

    Returns the lexicographically smallest optimal ``nu``.  ``lower`` is a
    known lower bound on the optimum; the search stops as soon as it is met.
    Raises :class:`Infeasible` if no such ``nu`` exists.
    """
    hi = target
    if lo > hi:
        raise Infeasible
    # suffix_max[j][k] = max_{i >= j} gens[k][i]
    suffix_max = [[0] * len(gens) for _ in range(n + 1)]
    for j in range(n - 1, -1, -1):
        suffix_max[j] = [max(suffix_max[j + 1][k], g[j]) for k, g in enumerate(gens)]
    # everything at the cap is always feasible when some generator is non-constant
    best = [n * hi + 1, None]
    nu = [lo] * n
    base_need = [target - lo * sum(g) for g in gens]

    def rest_bound(need: list[int], j: int) -> int | None:
        # each unit of a remaining nu_i adds at most suffix_max to a constraint
        lb = 0
        for k, r in enumerate(need):
            if r > 0:
                m = suffix_max[j][k]
                if m == 0:
                    return None
                lb = max(lb, -(-r // m))
        return lb

    def dfs(j: int, need: list[int], weight: int) -> bool:
        if j == n - 1:
            extra = 0
            for k, r in enumerate(need):
                if r > 0:
                    gj = gens[k][j]
                    if gj == 0:
                        return False
                    extra = max(extra, -(-r // gj))
            if lo + extra > hi:
                return False
            total = weight + lo + extra
            if total < best[0]:
                nu[j] = lo + extra
                best[0], best[1] = total, tuple(nu)
                return total <= lower
            return False
        for extra in range(0, hi - lo + 1):
            step = [r - extra * g[j] for r, g in zip(need, gens)]
            lb = rest_bound(step, j + 1)
            if lb is None:
                continue
            if weight + lo + extra + lb + (n - j - 1) * lo >= best[0]:
                if weight + lo + extra + (n - j - 1) * lo >= best[0]:
                    break
                continue
            nu[j] = lo + extra
            if dfs(j + 1, step, weight + lo + extra):
                return True
        return False

    if n == 1:
        g = [x[0] for x in gens]
        if any(r > 0 and gk == 0 for r, gk in zip(base_need, g)):
            raise Infeasible
        v = max([lo] + [lo + max(0, -(-r // gk)) for r, gk in zip(base_need, g) if r > 0])
        if v > hi:
            raise Infeasible
        return v, (v,)
    dfs(0, base_need, 0)
    if best[1] is None:
        raise Infeasible
    return best[0], best[1]


def contact_codim(ideal: MonomialIdeal, m: int) -> tuple[int, ExpVec]:
    """Minimal total order ``sum(nu)`` of an arc along which ``ideal`` vanishes to order ``m``."""
    if m < 1:
        raise ValueError(f"order must be positive, got {m}")
    if ideal.is_unit:
        raise IdealError("the unit ideal vanishes along no arc")
    return _min_weight(ideal.generators, ideal.n, m)


@dataclass
class ContactEntry:
    m: int
    weight: int
    witness: ExpVec

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.weight, self.m)

    def to_json(self) -> dict:
        return {"m": self.m, "weight": self.weight, "witness": list(self.witness), "ratio": str(self.ratio)}


@dataclass
class ContactProfile:
    ideal: MonomialIdeal
    entries: list[ContactEntry] = field(default_factory=list)

    @property
    def m_max(self) -> int:
        return self.entries[-1].m if self.entries else 0

    def lct(self) -> Fraction:
        return min(e.ratio for e in self.entries)

    def argmin(self) -> int:
        best = self.lct()
        return next(e.m for e in self.entries if e.ratio == best)

    @property
    def min_at_m_max(self) -> bool:
        """The minimum is first reached at the last order computed."""
        return self.argmin() == self.m_max

    def to_json(self) -> dict:
        return {
            "ideal": self.ideal.to_json(),
            "m_max": self.m_max,
            "entries": [e.to_json() for e in self.entries],
            "lct": str(self.lct()),
            "argmin": self.argmin(),
            "min_at_m_max": self.min_at_m_max,
        }


def contact_profile(ideal: MonomialIdeal, m_max: int) -> ContactProfile:
    if m_max < 1:
        raise ValueError(f"m_max must be positive, got {m_max}")
    if ideal.is_unit:
        raise IdealError("the unit ideal vanishes along no arc")
    prof = ContactProfile(ideal)
    prev = 0
    for m in range(1, m_max + 1):
        # the weight is non-decreasing in m, so the previous optimum is a floor
        w, nu = _min_weight(ideal.generators, ideal.n, m, lower=prev)
        prof.entries.append(ContactEntry(m, w, nu))
        prev = w
    return prof


def default_m_max(ideal: MonomialIdeal) -> int:
    """Least common denominator of a threshold-achieving facet normal.

    Scaling that normal by it gives an integer arc realising the threshold at
    exactly this order.
    """
    return min(math.lcm(*(x.denominator for x in w)) for w in lct_facets(ideal))


def lct_via_jets(ideal: MonomialIdeal, m_max: int | None = None) -> Fraction:
    if m_max is None:
        m_max = default_m_max(ideal)
    return contact_profile(ideal, m_max).lct()


def jet_dim(ideal: MonomialIdeal, m: int, fiber_over_origin: bool = False) -> int:
    """Dimension of the m-th jet scheme of V(ideal), or of its fiber over 0.

    Jets split by the orders ``nu_i`` of the coordinates, with ``nu_i = m + 1``
    standing for a coordinate that vanishes identically; the piece with
    orders ``nu`` has codimension ``sum(nu)``.  ``m = -1`` gives 0 (the jet
    scheme of order -1 is a point).
    """
    if m == -1:
        return 0
    if m < -1:
        raise ValueError(f"jet order must be >= -1, got {m}")
    if ideal.is_unit:
        raise IdealError("the unit ideal defines the empty scheme")
    w, _ = _min_weight(ideal.generators, ideal.n, m + 1, lo=1 if fiber_over_origin else 0)
    return (m + 1) * ideal.n - w


def homogeneous_degree(ideal: MonomialIdeal) -> int:
    degs = ideal.degrees()
    if len(degs) != 1:
        raise IdealError(f"{ideal} is not homogeneous (degrees {sorted(degs)})")
    return degs.pop()


def cone_recursion_check(ideal: MonomialIdeal, m_max: int) -> BoundReport:
    """Check ``dim pi_m^{-1}(0) = dim V_{m-d} + n(d-1)`` for ``d-1 <= m <= m_max``."""
    d = homogeneous_degree(ideal)
    n = ideal.n
    if m_max < d - 1:
        raise ValueError(f"m_max = {m_max} is below d - 1 = {d - 1}")
    rows = []
    first_bad = None
    for m in range(d - 1, m_max + 1):
        lhs = jet_dim(ideal, m, fiber_over_origin=True)
        rhs = jet_dim(ideal, m - d, fiber_over_origin=False) + n * (d - 1)
        rows.append({"m": m, "fiber_dim": lhs, "shifted_dim": rhs})
        if lhs != rhs and first_bad is None:
            first_bad = (m, lhs, rhs)
    m, lhs, rhs = first_bad or (m_max, rows[-1]["fiber_dim"], rows[-1]["shifted_dim"])
    return BoundReport.evaluate(
        "cone-recursion",
        {"ideal": ideal.to_json(), "d": d, "m_max": m_max},
        lhs, rhs, "=",
        witness={"m": m, "rows": rows, "first_violation": first_bad and first_bad[0]},
    )
