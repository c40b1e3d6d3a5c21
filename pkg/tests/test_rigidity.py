from fractions import Fraction as F

import pytest

from lct_kit.rigidity import rigidity_range, superrigidity_certificate


def test_boundary_cases():
    r = superrigidity_certificate(4)
    assert (r.case, r.codim, r.margin, r.contradiction) == ("low", 1, 0, True)
    r = superrigidity_certificate(12)
    assert (r.case, r.codim, r.margin, r.contradiction) == ("high", 3, 0, True)
    r = superrigidity_certificate(13)
    assert (r.case, r.margin, r.contradiction) == ("high", F(-1, 13), False)


@pytest.mark.parametrize("N", range(4, 41))
def test_margin_closed_forms(N):
    r = superrigidity_certificate(N)
    expected = F(3 * N - 12, N) if N <= 6 else F(12 - N, N)
    assert r.margin == expected
    assert r.contradiction == r.in_stated_range == (4 <= N <= 12)
    assert r.pushforward_degree_coeff == N


def test_ranges():
    assert all(r.contradiction for r in rigidity_range(4, 12))
    assert not any(r.contradiction for r in rigidity_range(13, 20))
    assert len(rigidity_range(4, 4)) == 1
    with pytest.raises(ValueError):
        rigidity_range(3, 5)
    with pytest.raises(ValueError):
        rigidity_range(8, 5)
