"""Exact real numbers of the form ``q + r*sqrt(d)``.

``q`` and ``r`` are rationals and ``d`` a nonnegative integer.  Values are
kept in canonical form: when ``r == 0`` or ``d`` is a perfect square the
value is folded into its rational part and stored with ``r = 0, d = 0``.
Radicands are not reduced to their squarefree part, so ``sqrt(8)`` and
``2*sqrt(2)`` are distinct representations of the same number; equality,
ordering and hashing all go through :func:`compare` and are representation
independent.

Ordering is decided by sign analysis and squaring only.  Floats never
enter a comparison.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from decimal import ROUND_FLOOR, Decimal, localcontext
from fractions import Fraction
from math import isqrt
from numbers import Rational

from .errors import DomainError

__all__ = [
    "ExactValue",
    "Ordering",
    "compare",
    "exact_max",
    "exact_min",
    "make_rational",
    "make_surd",
    "parse_exact",
    "to_decimal",
]


class Ordering(enum.IntEnum):
    LT = -1
    EQ = 0
    GT = 1


def _is_square(n: int) -> int | None:
    if n < 0:
        return None
    k = isqrt(n)
    return k if k * k == n else None


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise DomainError(f"expected a rational number, got {x!r}")


@dataclass(frozen=True, eq=False)
class ExactValue:
    q: Fraction = Fraction(0)
    r: Fraction = Fraction(0)
    d: int = 0

    def __post_init__(self):
        q, r, d = _frac(self.q), _frac(self.r), self.d
        if isinstance(d, bool) or not isinstance(d, int) or d < 0:
            raise DomainError(f"radicand must be a nonnegative integer, got {d!r}")
        k = _is_square(d)
        if r == 0 or d == 0:
            r, d = Fraction(0), 0
        elif k is not None:
            q, r, d = q + r * k, Fraction(0), 0
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "d", d)

    @property
    def is_rational(self) -> bool:
        return self.d == 0

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise DomainError(f"{self} is irrational")
        return self.q

    # arithmetic -----------------------------------------------------------

    def _radicand_with(self, other: "ExactValue") -> int:
        if self.d and other.d and self.d != other.d:
            raise DomainError(f"cannot combine radicands {self.d} and {other.d}")
        return self.d or other.d

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        d = self._radicand_with(other)
        return ExactValue(self.q + other.q, self.r + other.r, d)

    __radd__ = __add__

    def __neg__(self):
        return ExactValue(-self.q, -self.r, self.d)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        d = self._radicand_with(other)
        q = self.q * other.q + self.r * other.r * d
        r = self.q * other.r + self.r * other.q
        return ExactValue(q, r, d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, ExactValue):
            if not other.is_rational:
                raise DomainError("division by an irrational value is not supported")
            other = other.q
        other = _frac(other)
        if other == 0:
            raise DomainError("division by zero")
        return ExactValue(self.q / other, self.r / other, self.d)

    def square(self) -> "ExactValue":
        return self * self

    # ordering -------------------------------------------------------------

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return compare(self, other) is Ordering.EQ

    def __lt__(self, other):
        return compare(self, _coerce_strict(other)) is Ordering.LT

    def __le__(self, other):
        return compare(self, _coerce_strict(other)) is not Ordering.GT

    def __gt__(self, other):
        return compare(self, _coerce_strict(other)) is Ordering.GT

    def __ge__(self, other):
        return compare(self, _coerce_strict(other)) is not Ordering.LT

    def __hash__(self):
        # Equal values with different radicands share q and r^2*d (see module doc).
        if self.is_rational:
            return hash(self.q)
        return hash((self.q, self.r * self.r * self.d, _sign(self.r)))

    def __float__(self):
        return float(self.q) + float(self.r) * self.d**0.5

    # rendering ------------------------------------------------------------

    def __repr__(self):
        return f"ExactValue({self})"

    def __str__(self):
        return self.render(unicode=False)

    def render(self, unicode: bool = True) -> str:
        if self.is_rational:
            return str(self.q)
        root = f"√{self.d}" if unicode else f"sqrt({self.d})"
        mul = "·" if unicode else "*"
        r = abs(self.r)
        surd = root if r == 1 else f"{r}{mul}{root}"
        if self.q == 0:
            return surd if self.r > 0 else f"-{surd}"
        return f"{self.q} {'+' if self.r > 0 else '-'} {surd}"

    def to_json(self) -> dict:
        return {"q": str(self.q), "r": str(self.r), "d": self.d}

    @classmethod
    def from_json(cls, obj: dict) -> "ExactValue":
        return cls(Fraction(obj["q"]), Fraction(obj["r"]), int(obj["d"]))


def _coerce(x):
    if isinstance(x, ExactValue):
        return x
    if isinstance(x, (int, Rational)) and not isinstance(x, bool):
        return ExactValue(Fraction(x))
    return NotImplemented


def _coerce_strict(x) -> ExactValue:
    v = _coerce(x)
    if v is NotImplemented:
        raise TypeError(f"cannot compare ExactValue with {type(x).__name__}")
    return v


def make_rational(p: int, q: int = 1) -> ExactValue:
    if q == 0:
        raise DomainError("zero denominator")
    return ExactValue(Fraction(p, q))


def make_surd(r, d: int) -> ExactValue:
    """``r * sqrt(d)``, collapsed to a rational when ``d`` is a perfect square."""
    return ExactValue(Fraction(0), _frac(r), d)


def _sign_surd(a: Fraction, b: Fraction, d: int) -> int:
    """Sign of ``a + b*sqrt(d)``."""
    sa, sb = _sign(a), _sign(b) if d else 0
    if sb == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb
    # opposite signs: the larger magnitude wins
    return sa * _sign(a * a - b * b * d)


def _sign_two_surds(a: Fraction, b1: Fraction, d1: int, b2: Fraction, d2: int) -> int:
    """Sign of ``a + b1*sqrt(d1) + b2*sqrt(d2)``."""
    if d1 == d2 or not d1 or not d2 or b1 == 0 or b2 == 0:
        if d1 == d2:
            return _sign_surd(a, b1 + b2, d1)
        if not d2 or b2 == 0:
            return _sign_surd(a, b1, d1)
        return _sign_surd(a, b2, d2)
    # X = a + b1*sqrt(d1), Y = b2*sqrt(d2)
    sx = _sign_surd(a, b1, d1)
    sy = _sign(b2)
    if sx == 0:
        return sy
    if sx == sy:
        return sx
    # |X| vs |Y| via X^2 - Y^2 = (a^2 + b1^2 d1 - b2^2 d2) + 2 a b1 sqrt(d1)
    s = _sign_surd(a * a + b1 * b1 * d1 - b2 * b2 * d2, 2 * a * b1, d1)
    if s == 0:
        return 0
    return sx if s > 0 else sy


def compare(x, y) -> Ordering:
    x, y = _coerce_strict(x), _coerce_strict(y)
    s = _sign_two_surds(x.q - y.q, x.r, x.d, -y.r, y.d)
    return Ordering(s)


def exact_min(*values) -> ExactValue:
    vals = [_coerce_strict(v) for v in values]
    best = vals[0]
    for v in vals[1:]:
        if compare(v, best) is Ordering.LT:
            best = v
    return best


def exact_max(*values) -> ExactValue:
    vals = [_coerce_strict(v) for v in values]
    best = vals[0]
    for v in vals[1:]:
        if compare(v, best) is Ordering.GT:
            best = v
    return best


def _floor(x: ExactValue) -> int:
    if x.is_rational:
        return x.q.numerator // x.q.denominator
    with localcontext() as ctx:
        ctx.prec = 40 + len(str(abs(x.q.numerator))) + len(str(x.d))
        approx = (
            Decimal(x.q.numerator) / Decimal(x.q.denominator)
            + Decimal(x.r.numerator) / Decimal(x.r.denominator) * Decimal(x.d).sqrt()
        )
        f = int(approx.to_integral_value(rounding=ROUND_FLOOR))
    # exact correction of the approximate guess
    while compare(x, f) is Ordering.LT:
        f -= 1
    while compare(x, f + 1) is not Ordering.LT:
        f += 1
    return f


def to_decimal(x, digits: int = 6) -> str:
    """Correctly rounded decimal string (ties to even).  For display only."""
    if digits < 0:
        raise DomainError("digits must be nonnegative")
    x = _coerce_strict(x)
    scaled = x * 10**digits
    n = _floor(scaled)
    c = compare(scaled - n, Fraction(1, 2))
    if c is Ordering.GT or (c is Ordering.EQ and n % 2):
        n += 1
    sign = "-" if n < 0 else ""
    n = abs(n)
    if digits == 0:
        return f"{sign}{n}"
    whole, frac = divmod(n, 10**digits)
    return f"{sign}{whole}.{frac:0{digits}d}"


_NUM = r"[+-]?\d+(?:/\d+)?"
_SURD_RE = re.compile(
    rf"^(?:(?P<q>{_NUM})\s*(?P<op>[+-])\s*)?"
    r"(?P<r>[+-]?(?:\d+(?:/\d+)?)?)\s*\*?\s*(?:√\s*\(?\s*(?P<d1>\d+)\s*\)?|sqrt\s*\(\s*(?P<d2>\d+)\s*\))$"
)
_RAT_RE = re.compile(rf"^{_NUM}$")


def parse_exact(text: str) -> ExactValue:
    """Parse ``"p/q"``, ``"r√d"``, ``"r*sqrt(d)"`` or ``"q + r*sqrt(d)"``."""
    s = text.strip().replace("·", "*")
    if _RAT_RE.match(s):
        return ExactValue(Fraction(s))
    m = _SURD_RE.match(s)
    if not m:
        raise DomainError(f"cannot parse exact value {text!r}")
    r = Fraction(m["r"]) if m["r"] not in ("", "+", "-") else Fraction(-1 if m["r"] == "-" else 1)
    if m["op"] == "-":
        r = -r
    q = Fraction(m["q"]) if m["q"] else Fraction(0)
    return ExactValue(q, r, int(m["d1"] or m["d2"]))
