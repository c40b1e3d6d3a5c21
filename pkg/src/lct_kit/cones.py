"""Homogeneous ideals: the bound lct >= e/d, cone detection, and the example
families ``(x_1..x_k)^t`` and ``(x_1^t..x_k^t)`` with their projection bounds."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .ideal import MonomialIdeal, colength, maximal_ideal, power, pure_power_ideal
from .jets import homogeneous_degree
from .report import BoundReport
from .thresholds import (
    INFINITE_CODIM,
    lct,
    multiplier_ideal,
    non_lt_locus_codim,
    restrict_to_variables,
    zero_locus_components,
)

FAMILIES = ("power", "ci")


@dataclass
class ConeReport:
    d: int
    c: Fraction
    e: int | float
    bound_holds: bool | None
    equality: bool
    cone_variables: tuple[int, ...] | None = None
    restricted_ok: bool | None = None
    restricted_lct: Fraction | None = None
    locus_is_subspace: bool | None = None

    @property
    def audit_ok(self) -> bool:
        """The three equality conditions, when equality holds."""
        if not self.equality:
            return True
        return (
            self.cone_variables is not None
            and len(self.cone_variables) == self.e
            and bool(self.locus_is_subspace)
            and bool(self.restricted_ok)
        )

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "lct": str(self.c),
            "e": "inf" if self.e == INFINITE_CODIM else self.e,
            "bound": None if self.e == INFINITE_CODIM else str(Fraction(self.e, self.d)),
            "bound_holds": self.bound_holds,
            "equality": self.equality,
            "cone_variables": None if self.cone_variables is None else list(self.cone_variables),
            "locus_is_subspace": self.locus_is_subspace,
            "restricted_lct": None if self.restricted_lct is None else str(self.restricted_lct),
            "restricted_ok": self.restricted_ok,
            "audit_ok": self.audit_ok,
        }


def cone_bound_report(ideal: MonomialIdeal, d: int | None = None) -> ConeReport:
    """Compare lct with ``e/d`` and, at equality, audit the cone structure.

    ``e`` is the codimension of the non-log-terminal locus at the threshold,
    i.e. of the zero locus of the multiplier ideal at ``c = lct``.
    """
    deg = homogeneous_degree(ideal)
    if d is not None and d != deg:
        raise ValueError(f"generators have degree {deg}, not {d}")
    c = lct(ideal)
    e = non_lt_locus_codim(ideal, c)
    if e == INFINITE_CODIM:
        return ConeReport(deg, c, e, None, False)
    bound = Fraction(e, deg)
    report = ConeReport(deg, c, e, c >= bound, c == bound)
    if not report.equality:
        return report

    S = tuple(sorted({i for g in ideal.generators for i, x in enumerate(g) if x}))
    if len(S) != e:
        return report
    report.cone_variables = S
    locus = zero_locus_components(multiplier_ideal(ideal, c).ideal)
    report.locus_is_subspace = locus == [frozenset(S)]
    restricted = restrict_to_variables(ideal, S)
    rc = lct(restricted)
    report.restricted_lct = rc
    report.restricted_ok = rc == bound and non_lt_locus_codim(restricted, rc) == e
    return report


def check_cone_bound(ideal: MonomialIdeal, d: int) -> list[BoundReport]:
    r = cone_bound_report(ideal, d)
    instance = {"ideal": ideal.to_json(), "d": d}
    if r.e == INFINITE_CODIM:
        return [BoundReport.skip("cone-bound", instance, ">=", "empty non-log-terminal locus")]
    out = [BoundReport.evaluate("cone-bound", instance, r.c, Fraction(r.e, d), ">=", witness=r.to_json())]
    if r.equality:
        out.append(BoundReport.evaluate(
            "cone-equality-audit", instance, int(r.audit_ok), 1, "=", witness=r.to_json()
        ))
    return out


@dataclass
class ProjectionExampleRow:
    family: str
    k: int
    t: int
    c: Fraction
    length: int
    paper_bound: Fraction
    pushforward_lct: Fraction
    cross_checked: bool = False

    @property
    def ratio(self) -> Fraction:
        return self.paper_bound / self.pushforward_lct

    @property
    def holds(self) -> bool:
        return self.pushforward_lct <= self.paper_bound

    @property
    def strict(self) -> bool:
        return self.pushforward_lct < self.paper_bound

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "k": self.k,
            "t": self.t,
            "lct": str(self.c),
            "length": self.length,
            "bound": str(self.paper_bound),
            "pushforward_lct": str(self.pushforward_lct),
            "ratio": str(self.ratio),
            "holds": self.holds,
            "strict": self.strict,
            "cross_checked": self.cross_checked,
        }


def example_ideal(family: str, k: int, t: int) -> MonomialIdeal:
    if family == "power":
        return power(maximal_ideal(k), t)
    if family == "ci":
        return pure_power_ideal([t] * k)
    raise ValueError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")


def projection_example(k: int, t_max: int, family: str = "power", cross_check_up_to: int = 6) -> list[ProjectionExampleRow]:
    """Rows ``t = 1..t_max`` of an example family with the projection bound.

    ``power`` is ``V_t = (x_1..x_k)^t``: length ``C(k+t-1, k)`` and bound
    ``k! c^k / k^k``.  ``ci`` is ``W_t = (x_1^t..x_k^t)``: length ``t^k`` and
    bound ``c^k / k^k``.  The pushforward is a divisor with multiplicity equal
    to the length, so its threshold is ``1/length``.  Rows with
    ``t <= cross_check_up_to`` are recomputed on explicit ideals.
    """
    if k < 1 or t_max < 1:
        raise ValueError("k and t_max must be positive")
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
    rows = []
    for t in range(1, t_max + 1):
        c = Fraction(k, t)
        if family == "power":
            length = math.comb(k + t - 1, k)
            bound = math.factorial(k) * c**k / k**k
        else:
            length = t**k
            bound = c**k / k**k
        row = ProjectionExampleRow(family, k, t, c, length, bound, Fraction(1, length))
        if t <= cross_check_up_to:
            I = example_ideal(family, k, t)
            if lct(I) != c or colength(I) != length:
                raise AssertionError(f"closed form disagrees with computed ideal for {family} k={k} t={t}")
            row.cross_checked = True
        if not row.holds or (family == "power" and k >= 2 and not row.strict):
            raise AssertionError(f"projection bound fails on {row.to_json()}")
        rows.append(row)
    return rows


def sharpness_ratio(k: int, t: int) -> Fraction:
    """``k! * C(k+t-1, k) / t^k = t(t+1)...(t+k-1) / t^k``."""
    return Fraction(math.factorial(k) * math.comb(k + t - 1, k), t**k)


def sharpness_limit_table(k: int, t_max: int) -> list[tuple[int, Fraction]]:
    if k < 1 or t_max < 1:
        raise ValueError("k and t_max must be positive")
    table = [(t, sharpness_ratio(k, t)) for t in range(1, t_max + 1)]
    for (_, a), (_, b) in zip(table, table[1:]):
        if b > a:
            raise AssertionError(f"ratio increased: {a} -> {b}")
    last = table[-1][1]
    if not (1 <= last <= (1 + Fraction(k, t_max)) ** k):
        raise AssertionError(f"final ratio {last} outside [1, (1 + k/t_max)^k]")
    return table
