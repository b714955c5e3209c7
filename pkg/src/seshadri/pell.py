"""Pell equations and the Pell-type lower bound on eps(L,1).

For ``d = L^2`` not a square and a solution ``q^2 - d p^2 = 1``, the bound
``eps(L,1) >= p d / q`` holds outside a finite exceptional set.  The set
implemented here has the shape

    Exc(d; p, q) = {1, ..., floor(sqrt d)} U {r/s : 1 <= r/s < p d / q, 2 <= s < q^2}

with fractions counted in lowest terms.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from .closedform import epsilon_one
from .errors import DomainError
from .exactnum import ExactValue, Ordering, compare, make_surd
from .numlattice import DivisorClass, SurfaceType, require_ample, self_intersection

# Counting reduced fractions loops over every denominator below q^2.
EXC_COUNT_LIMIT = 10**6


@dataclass(frozen=True)
class PellSolution:
    p: int  # x in y^2 - d x^2 = 1
    q: int  # y


def _check_radicand(d: int) -> None:
    if isinstance(d, bool) or not isinstance(d, int) or d < 2:
        raise DomainError(f"Pell radicand must be an integer >= 2, got {d!r}")
    if isqrt(d) ** 2 == d:
        raise DomainError(f"Pell radicand {d} is a perfect square")


def pell_fundamental(d: int) -> PellSolution:
    """Least positive solution of ``q^2 - d p^2 = 1`` from the continued fraction of sqrt(d)."""
    _check_radicand(d)
    a0 = isqrt(d)
    m, den, a = 0, 1, a0
    # convergents h/k of sqrt(d)
    h_prev, h = 1, a0
    k_prev, k = 0, 1
    while h * h - d * k * k != 1:
        m = den * a - m
        den = (d - m * m) // den
        a = (a0 + m) // den
        h_prev, h = h, a * h + h_prev
        k_prev, k = k, a * k + k_prev
    return PellSolution(p=k, q=h)


def fsst_lower_bound(d: int) -> ExactValue:
    """The Pell bound ``p d / q`` built from the fundamental solution."""
    sol = pell_fundamental(d)
    return ExactValue(Fraction(sol.p * d, sol.q))


@dataclass(frozen=True)
class ExcSet:
    d: int
    p: int
    q: int

    @property
    def bound(self) -> Fraction:
        return Fraction(self.p * self.d, self.q)

    @property
    def integer_part(self) -> range:
        return range(1, isqrt(self.d) + 1)

    @property
    def max_denominator(self) -> int:
        """Fractions need ``2 <= s < q^2``."""
        return self.q * self.q - 1

    def __contains__(self, value) -> bool:
        v = Fraction(value)
        return exc_membership(self, v.numerator, v.denominator)

    @classmethod
    def for_radicand(cls, d: int) -> "ExcSet":
        sol = pell_fundamental(d)
        return cls(d, sol.p, sol.q)


def exc_membership(E: ExcSet, r: int, s: int) -> bool:
    if s == 0:
        raise DomainError("zero denominator")
    v = Fraction(r, s)
    if v.denominator == 1:
        return v.numerator in E.integer_part
    return 2 <= v.denominator <= E.max_denominator and 1 <= v < E.bound


def _prime_factors(n: int) -> list[int]:
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def _coprime_below(x: int, primes: list[int]) -> int:
    """Number of ``1 <= r <= x`` coprime to the product of ``primes`` (inclusion-exclusion)."""
    total = 0
    k = len(primes)
    for mask in range(1 << k):
        prod, bits = 1, 0
        for i in range(k):
            if mask >> i & 1:
                prod *= primes[i]
                bits += 1
        total += (-1) ** bits * (x // prod)
    return total


def exc_fraction_count(E: ExcSet) -> int | None:
    """Number of reduced non-integral fractions in the set; None if ``q^2`` is too large to enumerate."""
    if E.max_denominator > EXC_COUNT_LIMIT:
        return None
    B = E.bound
    count = 0
    for s in range(2, E.max_denominator + 1):
        # r with s <= r < s*B, gcd(r, s) = 1
        top = s * B
        hi = top.numerator // top.denominator
        if hi * top.denominator == top.numerator:
            hi -= 1
        if hi < s:
            continue
        pf = _prime_factors(s)
        count += _coprime_below(hi, pf) - _coprime_below(s - 1, pf)
    return count


def brute_exc_fraction_count(E: ExcSet) -> int:
    seen = 0
    for s in range(2, E.max_denominator + 1):
        r = s
        while Fraction(r, s) < E.bound:
            if gcd(r, s) == 1:
                seen += 1
            r += 1
    return seen


@dataclass(frozen=True)
class BoundComparison:
    d: int
    our_bound: ExactValue
    our_kind: str
    pell_applicable: bool
    solution: PellSolution | None = None
    pell_bound: ExactValue | None = None
    ordering: Ordering | None = None  # ours compared with the Pell bound
    exc_integer_count: int | None = None
    exc_reduced_fraction_count: int | None = None

    @property
    def which_larger(self) -> str:
        if self.ordering is None:
            return "n/a"
        return {Ordering.LT: "pell", Ordering.GT: "ours", Ordering.EQ: "equal"}[self.ordering]

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "our_bound": self.our_bound.to_json(),
            "our_kind": self.our_kind,
            "pell_applicable": self.pell_applicable,
            "pell_solution": None if self.solution is None else {"p": self.solution.p, "q": self.solution.q},
            "pell_bound": None if self.pell_bound is None else self.pell_bound.to_json(),
            "which_larger": self.which_larger,
            "exc_integer_count": self.exc_integer_count,
            "exc_reduced_fraction_count": self.exc_reduced_fraction_count,
        }


def compare_bounds(S: SurfaceType, L: DivisorClass) -> BoundComparison:
    """Set the eps(L,1) result next to the Pell bound for ``d = L^2``."""
    require_ample(L)
    est = epsilon_one(S, L)
    ours = ExactValue(est.value) if est.is_exact else est.lower
    d = self_intersection(L)
    if isqrt(d) ** 2 == d:
        return BoundComparison(d, ours, est.kind.value, pell_applicable=False)
    E = ExcSet.for_radicand(d)
    pell = ExactValue(E.bound)
    return BoundComparison(
        d,
        ours,
        est.kind.value,
        pell_applicable=True,
        solution=PellSolution(E.p, E.q),
        pell_bound=pell,
        ordering=compare(ours, pell),
        exc_integer_count=len(E.integer_part),
        exc_reduced_fraction_count=exc_fraction_count(E),
    )


def sqrt_bound_gap(d: int) -> ExactValue:
    """``sqrt(d) - p d / q``, positive for every fundamental solution."""
    return make_surd(1, d) - fsst_lower_bound(d)
