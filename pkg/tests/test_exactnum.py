from decimal import Decimal, localcontext
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from seshadri.errors import DomainError
from seshadri.exactnum import (
    ExactValue,
    Ordering,
    compare,
    make_rational,
    make_surd,
    parse_exact,
    to_decimal,
)


def dec(x: ExactValue, prec: int = 80) -> Decimal:
    with localcontext() as ctx:
        ctx.prec = prec
        q = Decimal(x.q.numerator) / Decimal(x.q.denominator)
        r = Decimal(x.r.numerator) / Decimal(x.r.denominator)
        return q + r * Decimal(x.d).sqrt()


rationals = st.fractions(min_value=-50, max_value=50, max_denominator=60)
radicands = st.sampled_from([0, 1, 2, 3, 4, 5, 8, 12, 18, 30, 50, 110, 4378000])
values = st.builds(ExactValue, rationals, rationals, radicands)


def test_make_rational():
    assert make_rational(93, 100).q == Fraction(93, 100)
    assert make_rational(0, 1) == 0
    assert make_rational(220, 21).as_fraction() == Fraction(220, 21)
    with pytest.raises(DomainError):
        make_rational(1, 0)


def test_make_surd_canonical():
    x = make_surd(1, 110)
    assert (x.q, x.r, x.d) == (0, 1, 110)
    two = make_surd(1, 4)
    assert two.is_rational and two.q == 2
    y = make_surd(Fraction(93, 100), 110)
    assert (y.r, y.d) == (Fraction(93, 100), 110)
    z = ExactValue(3, 0, 7)
    assert (z.r, z.d) == (0, 0)


def test_compare_examples():
    # 220/21 vs sqrt(110): 220^2 = 48400 < 110 * 21^2 = 48510
    assert 220**2 < 110 * 21**2
    assert compare(make_rational(220, 21), make_surd(1, 110)) is Ordering.LT
    # 0.93 sqrt(110) vs 10: 93^2 * 110 = 951390 < 100^2 * 10^2
    assert 93**2 * 110 < 100**2 * 10**2
    assert compare(make_surd(Fraction(93, 100), 110), 10) is Ordering.LT
    x = make_surd(Fraction(93, 100), 110)
    assert compare(x, x) is Ordering.EQ


def test_mixed_radicands_equal():
    assert make_surd(1, 8) == make_surd(2, 2)
    assert hash(make_surd(1, 8)) == hash(make_surd(2, 2))
    assert make_surd(-1, 8) != make_surd(2, 2)
    assert ExactValue(1, 1, 12) == ExactValue(1, 2, 3)


def test_to_decimal_examples():
    assert to_decimal(make_surd(1, 110), 2) == "10.49"
    assert to_decimal(make_surd(Fraction(93, 100), 110), 2) == "9.75"
    assert to_decimal(make_rational(220, 21), 2) == "10.48"
    assert to_decimal(make_rational(5, 2), 0) == "2"  # ties to even
    assert to_decimal(make_rational(-1, 3), 3) == "-0.333"
    assert to_decimal(-make_surd(1, 2), 4) == "-1.4142"


def test_distinct_radicand_arithmetic_rejected():
    with pytest.raises(DomainError):
        make_surd(1, 2) + make_surd(1, 3)
    with pytest.raises(DomainError):
        make_surd(1, 2) * make_surd(1, 3)


def test_arithmetic_same_radicand():
    x = ExactValue(1, 2, 3)
    assert x * x == ExactValue(13, 4, 3)
    assert x - x == 0
    assert (x + 1) / 2 == ExactValue(1, 1, 3)


@pytest.mark.parametrize(
    "text, expected",
    [
        ("220/21", ExactValue(Fraction(220, 21))),
        ("sqrt(110)", make_surd(1, 110)),
        ("93/100*sqrt(110)", make_surd(Fraction(93, 100), 110)),
        ("93/100√110", make_surd(Fraction(93, 100), 110)),
        ("93/100·√110", make_surd(Fraction(93, 100), 110)),
        ("-√5", make_surd(-1, 5)),
        ("3 - 2*sqrt(7)", ExactValue(3, -2, 7)),
        ("√4", ExactValue(2)),
    ],
)
def test_parse(text, expected):
    v = parse_exact(text)
    assert (v.q, v.r, v.d) == (expected.q, expected.r, expected.d)


def test_parse_rejects():
    with pytest.raises(DomainError):
        parse_exact("sqrt(-2)")
    with pytest.raises(DomainError):
        parse_exact("pi")


@given(values, values)
def test_trichotomy_and_decimal_agreement(x, y):
    c = compare(x, y)
    assert compare(y, x) is Ordering(-c)
    assert [x < y, x == y, x > y].count(True) == 1
    diff = dec(x) - dec(y)
    if abs(diff) > Decimal("1e-60"):
        assert c == (Ordering.GT if diff > 0 else Ordering.LT)


@given(rationals, st.integers(min_value=0, max_value=10**6))
def test_square_of_surd(r, d):
    assert make_surd(r, d).square() == ExactValue(r * r * d)


@given(values, st.integers(min_value=0, max_value=12))
def test_to_decimal_matches_reference(x, digits):
    with localcontext() as ctx:
        ctx.prec = 80
        ref = dec(x).quantize(Decimal(1).scaleb(-digits))
    assert Decimal(to_decimal(x, digits)) == ref


@given(values)
def test_json_roundtrip(x):
    y = ExactValue.from_json(x.to_json())
    assert (y.q, y.r, y.d) == (x.q, x.r, x.d)
