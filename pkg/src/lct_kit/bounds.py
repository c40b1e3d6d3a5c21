"""Seeded verification harness for the colength and multiplicity bounds.

Every check compares exact rationals.  Instances outside the hypothesis of a
bound (log terminal pairs) are counted as skipped, never as failures.
"""

from __future__ import annotations

import math
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .ideal import MonomialIdeal, colength, ideal_from_json, minimalize, parse_rat
from .newton import samuel_multiplicity
from .report import BoundReport, jsonable
from .thresholds import PairSpec, is_log_terminal_pair, pair_facet_values, pair_threshold

B_VALUES = (Fraction(0), Fraction(1, 3), Fraction(1, 2), Fraction(1), Fraction(3, 2))
SUITES = ("lemma-monomial", "theorem2", "oracle-lct", "multiplier", "cone")


def _pair_witness(p: PairSpec) -> dict:
    val, w = min(pair_facet_values(p))
    return {"facet": list(w), "facet_value": val}


def _theorem2_pair(ideal: MonomialIdeal, b: Fraction, mu: Fraction) -> PairSpec:
    # the divisor H is {x_n = 0}, entering with coefficient -b
    return PairSpec(ideal, (Fraction(0),) * (ideal.n - 1) + (-b,), mu)


def _check_theorem2_args(b, mu) -> tuple[Fraction, Fraction]:
    b, mu = parse_rat(b), parse_rat(mu)
    if b < 0:
        raise ValueError(f"b must be non-negative, got {b}")
    if mu <= 0:
        raise ValueError(f"mu must be positive, got {mu}")
    return b, mu


def check_theorem2_length(ideal: MonomialIdeal, b, mu) -> BoundReport:
    """``l(R/I) >= n^n mu^(n-1) (mu + b) / n!`` when ``(1/mu)(V - bH)`` is not log terminal."""
    b, mu = _check_theorem2_args(b, mu)
    n = ideal.n
    instance = {"ideal": ideal.to_json(), "b": b, "mu": mu}
    relation = ">" if n >= 2 else ">="
    p = _theorem2_pair(ideal, b, mu)
    if is_log_terminal_pair(p):
        return BoundReport.skip("theorem2-length", instance, relation, "pair is log terminal")
    rhs = Fraction(n**n) * mu ** (n - 1) * (mu + b) / math.factorial(n)
    return BoundReport.evaluate(
        "theorem2-length", instance, colength(ideal), rhs, relation,
        strictness_expected=n >= 2, witness=_pair_witness(p),
    )


def check_theorem2_multiplicity(ideal: MonomialIdeal, b, mu) -> BoundReport:
    """``e(I) >= n^n mu^(n-1) (mu + b)`` under the same hypothesis."""
    b, mu = _check_theorem2_args(b, mu)
    n = ideal.n
    instance = {"ideal": ideal.to_json(), "b": b, "mu": mu}
    p = _theorem2_pair(ideal, b, mu)
    if is_log_terminal_pair(p):
        return BoundReport.skip("theorem2-multiplicity", instance, ">=", "pair is log terminal")
    rhs = Fraction(n**n) * mu ** (n - 1) * (mu + b)
    return BoundReport.evaluate(
        "theorem2-multiplicity", instance, samuel_multiplicity(ideal), rhs, ">=",
        witness=_pair_witness(p),
    )


def check_lemma_monomial(ideal: MonomialIdeal, b: Sequence, mu) -> BoundReport:
    """``l(R/I) >= (n^n / n!) prod (mu - b_i)`` for a non-log-terminal monomial pair."""
    p = PairSpec.make(ideal, b, mu)
    n = ideal.n
    instance = {"ideal": ideal.to_json(), "b": list(p.b), "mu": p.mu}
    relation = ">" if n >= 2 else ">="
    if is_log_terminal_pair(p):
        return BoundReport.skip("lemma-monomial", instance, relation, "pair is log terminal")
    rhs = Fraction(n**n, math.factorial(n)) * math.prod(p.mu - bi for bi in p.b)
    return BoundReport.evaluate(
        "lemma-monomial", instance, colength(ideal), rhs, relation,
        strictness_expected=n >= 2, witness=_pair_witness(p),
    )


# -- sampling ----------------------------------------------------------------


@dataclass(frozen=True)
class InstanceSampler:
    """Reproducible stream of random monomial instances.

    Trial ``k`` draws from its own generator seeded by ``(seed, k)``, so the
    stream does not depend on how trials are scheduled.
    """

    seed: int
    n_range: tuple[int, int] = (1, 4)
    exponent_range: tuple[int, int] = (1, 6)
    generator_count_range: tuple[int, int] = (0, 4)
    degree_range: tuple[int, int] = (1, 5)
    b_values: tuple[Fraction, ...] = B_VALUES

    def rng(self, index: int) -> random.Random:
        return random.Random(f"lct-kit:{self.seed}:{index}")

    def ideal(self, rng: random.Random) -> MonomialIdeal:
        """Zero-dimensional ideal: a pure power on every axis plus random mixed generators."""
        n = rng.randint(*self.n_range)
        lo, hi = self.exponent_range
        gens = []
        for i in range(n):
            v = [0] * n
            v[i] = rng.randint(max(lo, 1), hi)
            gens.append(tuple(v))
        for _ in range(rng.randint(*self.generator_count_range)):
            v = tuple(rng.randint(0, hi) for _ in range(n))
            if sum(v):
                gens.append(v)
        return minimalize(gens, n)

    def ci_ideal(self, rng: random.Random) -> MonomialIdeal:
        n = rng.randint(*self.n_range)
        lo, hi = self.exponent_range
        return minimalize(
            [tuple(rng.randint(max(lo, 1), hi) if i == j else 0 for j in range(n)) for i in range(n)], n
        )

    def homogeneous_ideal(self, rng: random.Random) -> tuple[MonomialIdeal, int]:
        """Random monomials of one degree; zero-dimensionality is not forced."""
        n = rng.randint(*self.n_range)
        d = rng.randint(*self.degree_range)
        monos = [m for m in _compositions(d, n)]
        k = rng.randint(1, min(len(monos), 6))
        return minimalize(rng.sample(monos, k), n), d

    def boundary(self, rng: random.Random, n: int) -> tuple[Fraction, ...]:
        return tuple(rng.choice(self.b_values) for _ in range(n))

    def to_json(self) -> dict:
        return {
            "seed": self.seed,
            "n_range": list(self.n_range),
            "exponent_range": list(self.exponent_range),
            "generator_count_range": list(self.generator_count_range),
            "degree_range": list(self.degree_range),
            "b_values": [str(b) for b in self.b_values],
        }


def _compositions(d: int, n: int):
    if n == 1:
        yield (d,)
        return
    for a in range(d, -1, -1):
        for rest in _compositions(d - a, n - 1):
            yield (a,) + rest


def lemma_instance(sampler: InstanceSampler, rng: random.Random, attempts: int = 8):
    """Ideal, boundary and the exact threshold ``mu`` of their pair.

    At that ``mu`` the pair sits on the boundary of log terminality.  Draws
    for ``b`` with ``max b_i`` above the threshold are retried, falling back
    to ``b = 0``.
    """
    ideal = sampler.ideal(rng)
    n = ideal.n
    for _ in range(attempts):
        b = sampler.boundary(rng, n)
        mu, _ = pair_threshold(ideal, b)
        if mu > 0 and mu >= max(b):
            return ideal, b, mu
    b = (Fraction(0),) * n
    return ideal, b, pair_threshold(ideal, b)[0]


def theorem2_instance(sampler: InstanceSampler, rng: random.Random, attempts: int = 8):
    ideal = sampler.ideal(rng)
    n = ideal.n
    for _ in range(attempts):
        b = rng.choice(sampler.b_values)
        mu, _ = pair_threshold(ideal, (Fraction(0),) * (n - 1) + (-b,))
        if mu > 0 and b <= mu:
            return ideal, b, mu
    return ideal, Fraction(0), pair_threshold(ideal, (Fraction(0),) * n)[0]


# -- suites ------------------------------------------------------------------


def _trial_lemma(sampler, rng):
    ideal, b, mu = lemma_instance(sampler, rng)
    return [check_lemma_monomial(ideal, b, mu)]


def _trial_theorem2(sampler, rng):
    ideal, b, mu = theorem2_instance(sampler, rng)
    return [check_theorem2_length(ideal, b, mu), check_theorem2_multiplicity(ideal, b, mu)]


def _trial_oracle(sampler, rng):
    return [check_oracle_lct(sampler.ideal(rng))]


def check_oracle_lct(ideal: MonomialIdeal, m_max: int | None = None) -> BoundReport:
    from .jets import contact_profile, default_m_max
    from .thresholds import lct

    m_max = default_m_max(ideal) if m_max is None else m_max
    prof = contact_profile(ideal, m_max)
    return BoundReport.evaluate(
        "oracle-lct", {"ideal": ideal.to_json(), "m_max": m_max},
        lct(ideal), prof.lct(), "=",
        witness={"argmin": prof.argmin(), "min_at_m_max": prof.min_at_m_max},
    )


def multiplier_c_values(c0: Fraction, rng: random.Random) -> list[Fraction]:
    """Five exponents around the threshold: two below, the threshold, two above."""
    q = rng.randint(2, 12)
    return sorted({
        c0 * Fraction(rng.randint(0, q - 1), q),
        c0 - Fraction(1, rng.randint(c0.denominator * 2, c0.denominator * 40)),
        c0,
        c0 + Fraction(1, rng.randint(2, 60)),
        c0 * Fraction(rng.randint(q + 1, 3 * q), q),
    })


def check_multiplier(ideal: MonomialIdeal, cs: Sequence) -> list[BoundReport]:
    from .ideal import contains_monomial
    from .thresholds import lct, multiplier_ideal

    c0 = lct(ideal)
    cs = sorted(parse_rat(c) for c in cs)
    results = [multiplier_ideal(ideal, c) for c in cs]
    out = []
    for r in results:
        out.append(BoundReport.evaluate(
            "multiplier-trivial", {"ideal": ideal.to_json(), "c": r.c, "lct": c0},
            int(r.trivial), int(r.c < c0), "=",
        ))
    for lo, hi in zip(results, results[1:]):
        escaped = [g for g in hi.ideal.generators if not contains_monomial(lo.ideal, g)]
        out.append(BoundReport.evaluate(
            "multiplier-monotone", {"ideal": ideal.to_json(), "c1": lo.c, "c2": hi.c},
            len(escaped), 0, "=", witness={"escaped": [list(g) for g in escaped]},
        ))
    return out


def _trial_multiplier(sampler, rng):
    from .thresholds import lct

    ideal = sampler.ideal(rng)
    return check_multiplier(ideal, multiplier_c_values(lct(ideal), rng))


def _trial_cone(sampler, rng):
    from .cones import check_cone_bound

    ideal, d = sampler.homogeneous_ideal(rng)
    return check_cone_bound(ideal, d)


TRIALS: dict[str, Callable] = {
    "lemma-monomial": _trial_lemma,
    "theorem2": _trial_theorem2,
    "oracle-lct": _trial_oracle,
    "multiplier": _trial_multiplier,
    "cone": _trial_cone,
}


@dataclass
class SuiteSummary:
    suite: str
    sampler: InstanceSampler
    trials: int
    checked: int = 0
    skipped: int = 0
    gated_instances: int = 0
    gate_passed: int = 0
    failures: list[BoundReport] = field(default_factory=list)
    by_check: dict[str, list[int]] = field(default_factory=dict)  # name -> [checked, skipped, failed]

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def gate_rate(self) -> Fraction | None:
        if not self.gated_instances:
            return None
        return Fraction(self.gate_passed, self.gated_instances)

    def add(self, reports: list[BoundReport]) -> None:
        gated = [r for r in reports if r.name in GATED]
        if gated:
            self.gated_instances += 1
            if not gated[0].skipped:
                self.gate_passed += 1
        for r in reports:
            row = self.by_check.setdefault(r.name, [0, 0, 0])
            if r.skipped:
                self.skipped += 1
                row[1] += 1
                continue
            self.checked += 1
            row[0] += 1
            if r.failed:
                row[2] += 1
                self.failures.append(r)

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "sampler": self.sampler.to_json(),
            "trials": self.trials,
            "checked": self.checked,
            "skipped": self.skipped,
            "gate_rate": jsonable(self.gate_rate),
            "by_check": {k: {"checked": v[0], "skipped": v[1], "failed": v[2]}
                         for k, v in sorted(self.by_check.items())},
            "failures": [r.to_json() for r in self.failures],
            "ok": self.ok,
        }


GATED = {"lemma-monomial", "theorem2-length", "theorem2-multiplicity"}


def _run_trial(args) -> list[BoundReport]:
    sampler, suite, index = args
    return TRIALS[suite](sampler, sampler.rng(index))


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("LCT_KIT_THREADS", "1")))
    except ValueError:
        return 1


def run_suite(sampler: InstanceSampler, suite: str, trials: int, workers: int | None = None) -> SuiteSummary:
    if suite not in TRIALS:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    if trials < 1:
        raise ValueError(f"trials must be at least 1, got {trials}")
    workers = _workers() if workers is None else workers
    summary = SuiteSummary(suite, sampler, trials)
    jobs = [(sampler, suite, k) for k in range(trials)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_trial, jobs, chunksize=8))
    else:
        results = [_run_trial(job) for job in jobs]
    for reports in results:
        summary.add(reports)
    return summary


def replay(report: dict) -> BoundReport:
    """Re-run a check from the JSON of an emitted report."""
    name = report["check"]
    inst = report["instance"]
    ideal, _ = ideal_from_json(inst["ideal"])
    if name == "lemma-monomial":
        return check_lemma_monomial(ideal, inst["b"], inst["mu"])
    if name == "theorem2-length":
        return check_theorem2_length(ideal, inst["b"], inst["mu"])
    if name == "theorem2-multiplicity":
        return check_theorem2_multiplicity(ideal, inst["b"], inst["mu"])
    if name == "oracle-lct":
        return check_oracle_lct(ideal, inst["m_max"])
    if name == "multiplier-trivial":
        return check_multiplier(ideal, [inst["c"]])[0]
    if name == "multiplier-monotone":
        return check_multiplier(ideal, [inst["c1"], inst["c2"]])[-1]
    if name.startswith("cone-"):
        from .cones import check_cone_bound

        return next(r for r in check_cone_bound(ideal, inst["d"]) if r.name == name)
    raise ValueError(f"cannot replay check {name!r}")
