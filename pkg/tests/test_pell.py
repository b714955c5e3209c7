from fractions import Fraction
from math import gcd, isqrt

import pytest

from seshadri.closedform import Kind
from seshadri.errors import DomainError
from seshadri.exactnum import make_surd
from seshadri.numlattice import DivisorClass, surface_params
from seshadri.pell import (
    ExcSet,
    PellSolution,
    brute_exc_fraction_count,
    compare_bounds,
    exc_fraction_count,
    exc_membership,
    fsst_lower_bound,
    pell_fundamental,
    sqrt_bound_gap,
)

NON_SQUARES = [d for d in range(2, 501) if isqrt(d) ** 2 != d]


def chakravala(d: int) -> tuple[int, int]:
    """Fundamental (q, p) with q^2 - d p^2 = 1 by the cyclic method."""
    a = isqrt(d)
    if a * a < d and (a + 1) ** 2 - d < d - a * a:
        a += 1
    b, k = 1, a * a - d
    while k != 1:
        # choose m = -a/b mod k with |m^2 - d| minimal
        ak = abs(k)
        best = None
        for m in range(1, 2 * isqrt(d) + 2 * ak + 2):
            if (a + b * m) % ak == 0:
                if best is None or abs(m * m - d) < abs(best * best - d):
                    best = m
        m = best
        a, b, k = (a * m + d * b) // ak, (a + b * m) // ak, (m * m - d) // k
    return a, b


def brute_pell(d: int, limit: int) -> tuple[int, int] | None:
    for p in range(1, limit):
        q2 = 1 + d * p * p
        q = isqrt(q2)
        if q * q == q2:
            return q, p
    return None


@pytest.mark.parametrize("d, p, q", [(110, 2, 21), (2, 2, 3), (3, 1, 2), (30, 2, 11), (61, 226153980, 1766319049)])
def test_known_solutions(d, p, q):
    assert pell_fundamental(d) == PellSolution(p, q)


def test_pell_all_small_radicands():
    for d in NON_SQUARES:
        sol = pell_fundamental(d)
        assert sol.q ** 2 - d * sol.p ** 2 == 1
        assert (sol.q, sol.p) == chakravala(d), d
        small = brute_pell(d, 2000)
        if small is not None:
            assert (sol.q, sol.p) == small


def test_bound_below_sqrt():
    for d in NON_SQUARES:
        assert fsst_lower_bound(d) < make_surd(1, d)
        assert sqrt_bound_gap(d) > 0


def test_fsst_110():
    assert fsst_lower_bound(110) == Fraction(220, 21)


@pytest.mark.parametrize("d", [0, 1, 4, 49, -3])
def test_rejects_bad_radicand(d):
    with pytest.raises(DomainError):
        pell_fundamental(d)


@pytest.mark.parametrize("d", [2, 3, 5, 6, 7, 8, 10, 11, 12, 15, 20, 24, 30, 35])
def test_exc_count_matches_brute_force(d):
    E = ExcSet.for_radicand(d)
    assert exc_fraction_count(E) == brute_exc_fraction_count(E)


def test_exc_membership_enumeration():
    E = ExcSet.for_radicand(12)  # (p, q) = (2, 7), bound 24/7
    assert (E.p, E.q) == (2, 7)
    members = set()
    for s in range(1, 60):
        for r in range(1, 4 * s):
            if exc_membership(E, r, s):
                members.add(Fraction(r, s))
    expected = {Fraction(k) for k in (1, 2, 3)}
    for s in range(2, 49):
        for r in range(s, 4 * s):
            if gcd(r, s) == 1 and Fraction(r, s) < Fraction(24, 7):
                expected.add(Fraction(r, s))
    assert members == expected
    assert Fraction(7, 2) not in E and 4 not in E and Fraction(1, 2) not in E


def test_exc_count_skipped_when_large():
    E = ExcSet.for_radicand(61)
    assert exc_fraction_count(E) is None


def test_compare_bounds_examples():
    c = compare_bounds(surface_params(6), DivisorClass(5, 11))
    assert c.pell_applicable and c.solution == PellSolution(2, 21)
    assert c.which_larger == "pell" and c.our_kind == Kind.BOUNDED_BELOW.value
    assert c.exc_integer_count == 10
    c = compare_bounds(surface_params(1), DivisorClass(1, 2))
    assert not c.pell_applicable and c.which_larger == "n/a"
    c = compare_bounds(surface_params(6), DivisorClass(5, 27))
    # 15 * 5291 < 86940: the Pell bound is larger, and 15 sits in the exceptional set
    assert c.solution == PellSolution(322, 5291) and 5291**2 - 270 * 322**2 == 1
    assert c.our_bound == 15 and c.which_larger == "pell" and 15 * 5291 < 86940
    assert 15 in ExcSet.for_radicand(270)
