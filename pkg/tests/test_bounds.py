import json
import math
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lct_kit import bounds
from lct_kit.bounds import (
    InstanceSampler,
    check_lemma_monomial,
    check_multiplier,
    check_oracle_lct,
    check_theorem2_length,
    check_theorem2_multiplicity,
    lemma_instance,
    replay,
    run_suite,
    theorem2_instance,
)
from lct_kit.ideal import maximal_ideal, power
from lct_kit.report import BoundReport, compare, jsonable


def test_length_bound_examples(ideal):
    r = check_theorem2_length(ideal((2, 0), (0, 3)), F(1, 2), F(9, 10))
    assert (r.lhs, r.rhs, r.relation, r.holds) == (6, F(63, 25), ">", True)
    r = check_theorem2_length(maximal_ideal(2), 0, F(1, 2))
    assert (r.lhs, r.rhs, r.holds) == (1, F(1, 2), True)
    r = check_theorem2_length(ideal((1,)), 0, 1)
    assert (r.lhs, r.rhs, r.relation, r.holds) == (1, 1, ">=", True)


def test_multiplicity_bound_examples(ideal):
    r = check_theorem2_multiplicity(ideal((2, 0), (0, 3)), 0, F(6, 5))
    assert (r.lhs, r.rhs, r.holds) == (6, F(144, 25), True)
    for t in range(1, 6):
        r = check_theorem2_multiplicity(power(maximal_ideal(2), t), 0, F(t, 2))
        assert r.lhs == r.rhs == t * t and r.holds
    # V - H with V = H is the zero divisor: log terminal, so outside the hypothesis
    r = check_theorem2_multiplicity(ideal((1,)), 1, 1)
    assert r.skipped and r.holds is None and not r.failed


def test_divisor_bounds_reject_bad_arguments(ideal):
    with pytest.raises(ValueError):
        check_theorem2_length(ideal((1,)), -1, 1)
    with pytest.raises(ValueError):
        check_theorem2_multiplicity(ideal((1,)), 0, 0)


def test_monomial_pair_bound_examples(ideal):
    r = check_lemma_monomial(ideal((2, 0), (0, 3)), (0, 0), F(6, 5))
    assert (r.lhs, r.rhs, r.holds, r.strictness_expected) == (6, F(72, 25), True, True)
    for n in range(1, 5):
        r = check_lemma_monomial(maximal_ideal(n), (0,) * n, F(1, n))
        assert r.lhs == 1 and r.rhs == F(1, math.factorial(n)) and r.holds
        assert r.relation == (">" if n >= 2 else ">=")
    r = check_lemma_monomial(ideal((2, 0), (0, 3)), (0, 0), 2)
    assert r.skipped


def test_monomial_pair_bound_at_sampled_threshold(ideal):
    from lct_kit.thresholds import pair_threshold

    I = ideal((2, 0), (0, 3))
    b = (F(1, 2), F(1, 3))
    mu, _ = pair_threshold(I, b)
    assert mu == F(6, 5) + F(1, 2) * F(1, 2) * F(6, 5) + F(1, 3) * F(1, 3) * F(6, 5)
    r = check_lemma_monomial(I, b, mu)
    assert not r.skipped and r.holds


@given(st.integers(0, 10**6), st.integers(0, 200))
def test_threshold_instances_are_not_log_terminal(seed, index):
    sampler = InstanceSampler(seed)
    r = check_lemma_monomial(*lemma_instance(sampler, sampler.rng(index)))
    assert not r.skipped and r.holds
    I, b, mu = theorem2_instance(sampler, sampler.rng(index))
    for r in (check_theorem2_length(I, b, mu), check_theorem2_multiplicity(I, b, mu)):
        assert not r.skipped and r.holds


def test_sampler_is_deterministic():
    a, b = InstanceSampler(3), InstanceSampler(3)
    assert [a.ideal(a.rng(k)) for k in range(20)] == [b.ideal(b.rng(k)) for k in range(20)]
    for k in range(50):
        I = a.ideal(a.rng(k))
        assert I.is_zero_dimensional and 1 <= I.n <= 4
        J, d = a.homogeneous_ideal(a.rng(k))
        assert J.degrees() == {d}


def test_run_suite_examples():
    assert run_suite(InstanceSampler(42), "lemma-monomial", 500).ok
    s = run_suite(InstanceSampler(7), "theorem2", 500)
    assert s.ok and s.gate_rate == 1
    with pytest.raises(ValueError):
        run_suite(InstanceSampler(1), "lemma-monomial", 0)
    with pytest.raises(ValueError):
        run_suite(InstanceSampler(1), "nope", 5)


def test_run_suite_is_reproducible_and_schedule_free():
    serial = run_suite(InstanceSampler(5), "multiplier", 24, workers=1)
    again = run_suite(InstanceSampler(5), "multiplier", 24, workers=1)
    parallel = run_suite(InstanceSampler(5), "multiplier", 24, workers=2)
    assert serial.to_json() == again.to_json() == parallel.to_json()


def test_oracle_and_multiplier_checks(ideal):
    r = check_oracle_lct(ideal((2, 0), (0, 3)))
    assert r.holds and r.lhs == F(5, 6) and r.witness["argmin"] == 6
    reports = check_multiplier(ideal((2, 0), (0, 3)), ["1/2", "5/6", "1"])
    assert [r.name for r in reports] == ["multiplier-trivial"] * 3 + ["multiplier-monotone"] * 2
    assert all(r.holds for r in reports)


def test_replay_round_trips_through_json(ideal):
    originals = [
        check_lemma_monomial(ideal((2, 0), (0, 3)), (0, 0), F(6, 5)),
        check_theorem2_length(ideal((2, 0), (0, 3)), F(1, 2), F(9, 10)),
        check_theorem2_multiplicity(ideal((2, 0), (0, 3)), 0, F(6, 5)),
        check_oracle_lct(ideal((3, 0), (1, 1), (0, 4))),
        *check_multiplier(ideal((2, 0), (0, 3)), [F(1, 2), F(5, 6)]),
    ]
    for r in originals:
        data = json.loads(json.dumps(r.to_json()))
        again = replay(data)
        assert again.to_json() == r.to_json()
    with pytest.raises(ValueError):
        replay({"check": "unknown", "instance": {"ideal": ideal((1,)).to_json()}})


def test_report_helpers():
    assert compare(F(1), F(1), ">=") and not compare(F(1), F(1), ">") and compare(F(1), F(1), "=")
    with pytest.raises(ValueError):
        compare(F(1), F(1), "<")
    with pytest.raises(ValueError):
        BoundReport.evaluate("x", {}, 1, 0, ">=", strictness_expected=True)
    assert jsonable({"a": F(1, 2), "b": [F(3), math.inf]}) == {"a": "1/2", "b": ["3", "inf"]}
    with pytest.raises(TypeError):
        jsonable(0.5)


def test_summary_counts():
    s = run_suite(InstanceSampler(11), "cone", 40)
    data = s.to_json()
    assert data["checked"] + data["skipped"] >= 40
    assert data["sampler"]["seed"] == 11
    assert s.ok
    assert bounds.SUITES == tuple(bounds.TRIALS)
