"""Closed-form Seshadri constants and bounds on hyperelliptic surfaces.

Every function here is a total function of a surface type and an ample
class ``L = (a, b)``; it returns a :class:`SeshadriEstimate` that carries
the conclusion together with the statement it rests on.  All regime
thresholds are compared exactly; the constant ``delta = 93/100`` is a
``Fraction``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction

from .errors import DomainError
from .exactnum import ExactValue, exact_max, make_surd
from .numlattice import DivisorClass, SurfaceType, require_ample, self_intersection

DEFAULT_DELTA = Fraction(93, 100)
TYPE6_POINT_FACTOR = Fraction(7, 10)

PROV_ODD = "Theorem: odd types"
PROV_EVEN1 = "Proposition: even types, eps(L) = b"
PROV_EVEN2 = "Proposition: even types, eps(L,x) constant in x"
PROV_RATIONAL = "Theorem: eps(L) rational for types other than 6"
PROV_TYPE6_RATIONAL = "Theorem: type 6, b outside (2a, 9a/2)"
PROV_TYPE6_BOUND = "Proposition: type 6, eps(L,x) >= 0.7*sqrt(L^2)"
PROV_BEZOUT = "Bezout bound against the fibres through the point"


def prov_type(t: int) -> str:
    return f"Theorem: eps(L,1) on type {t}"


class Kind(str, enum.Enum):
    EXACT = "exact"
    CERTIFIED_RATIONAL = "certified_rational"
    BOUNDED_BELOW = "bounded_below"
    UNKNOWN_WITH_BOUND = "unknown_with_bound"


class Genus(str, enum.Enum):
    """Which self-intersection bound a curve through the point obeys."""

    VERY_GENERAL = "vg"  # C^2 >= m^2 - m + 2 for m >= 2
    GENERAL = "g"  # C^2 >= m^2 - m


class PointKind(str, enum.Enum):
    VERY_GENERAL = "very_general"
    ON_SINGULAR_FIBRE = "on_singular_fibre"
    ARBITRARY = "arbitrary"


@dataclass(frozen=True)
class PointClass:
    kind: PointKind
    n: int | None = None

    @classmethod
    def very_general(cls) -> "PointClass":
        return cls(PointKind.VERY_GENERAL)

    @classmethod
    def arbitrary(cls) -> "PointClass":
        return cls(PointKind.ARBITRARY)

    @classmethod
    def on_singular_fibre(cls, n: int) -> "PointClass":
        return cls(PointKind.ON_SINGULAR_FIBRE, n)

    def validate(self, S: SurfaceType) -> None:
        if self.kind is PointKind.ON_SINGULAR_FIBRE:
            if self.n not in S.sing_mults:
                raise DomainError(
                    f"type {S.type_id} has no singular fibre of multiplicity {self.n!r} "
                    f"(multiplicities: {list(S.sing_mults)})"
                )
        elif self.n is not None:
            raise DomainError(f"{self.kind.value} point takes no multiplicity")

    def fibre_mults(self, S: SurfaceType) -> tuple[int, ...]:
        """Multiplicities of the Psi-fibre the point may lie on."""
        if self.kind is PointKind.ON_SINGULAR_FIBRE:
            return (self.n,)
        if self.kind is PointKind.VERY_GENERAL:
            return (1,)
        return S.fibre_mults

    def __str__(self):
        if self.kind is PointKind.ON_SINGULAR_FIBRE:
            return f"on_singular_fibre({self.n})"
        return self.kind.value

    def to_json(self) -> dict:
        return {"kind": self.kind.value, "n": self.n}


@dataclass(frozen=True)
class SeshadriEstimate:
    kind: Kind
    provenance: str
    branch: str
    value: Fraction | None = None
    lower: ExactValue | None = None
    upper: ExactValue | None = None

    @property
    def is_exact(self) -> bool:
        return self.kind is Kind.EXACT

    def to_json(self) -> dict:
        return {
            "kind": self.kind.value,
            "value": None if self.value is None else str(self.value),
            "lower": None if self.lower is None else self.lower.to_json(),
            "upper": None if self.upper is None else self.upper.to_json(),
            "provenance": self.provenance,
            "branch": self.branch,
        }


def _exact(value, provenance: str, branch: str) -> SeshadriEstimate:
    return SeshadriEstimate(Kind.EXACT, provenance, branch, value=Fraction(value))


def _ev(x) -> ExactValue:
    return x if isinstance(x, ExactValue) else ExactValue(Fraction(x))


# --- fibre data --------------------------------------------------------------


def fibre_ratio_bound(S: SurfaceType, L: DivisorClass, n: int) -> Fraction:
    """Smallest Seshadri ratio of a fibre through a point on a Psi-fibre of multiplicity n."""
    return min(Fraction(S.phi_coeff * L.a), Fraction(S.mu * L.b, n))


def bezout_bound(S: SurfaceType, L: DivisorClass, n: int) -> Fraction:
    """Lower bound on eps(L,x) for x on a Psi-fibre of multiplicity n.

    Fibres through x give ``(gamma/mu) a`` and ``mu b / n``; any other curve
    of multiplicity m meets the Phi-fibre in ``(gamma/mu) alpha >= m`` and
    the Psi-fibre in ``mu beta >= m n``, so its ratio is at least
    ``a n / mu + b mu / gamma``.
    """
    other = Fraction(L.a * n, S.mu) + Fraction(L.b, S.phi_coeff)
    return min(fibre_ratio_bound(S, L, n), other)


# --- regimes -----------------------------------------------------------------


def _even1(S: SurfaceType, L: DivisorClass) -> bool:
    if S.type_id == 2:
        return L.b <= L.a
    if S.type_id in (4, 6):
        return 2 * L.b <= L.a
    return False


def _even2_value(S: SurfaceType, L: DivisorClass) -> int | None:
    a, b = L.a, L.b
    if S.type_id == 2 and b >= 3 * a:
        return 2 * a
    if S.type_id == 4 and 2 * b >= 7 * a:
        return 2 * a
    if S.type_id == 6 and b >= 8 * a:
        return 3 * a
    return None


def in_type6_gap(L: DivisorClass) -> bool:
    """Whether ``2a < b < 9a/2``."""
    return 2 * L.a < L.b and 2 * L.b < 9 * L.a


def _type6_point_bound(L: DivisorClass) -> ExactValue:
    return make_surd(TYPE6_POINT_FACTOR, self_intersection(L))


# --- eps(L) --------------------------------------------------------------------


def epsilon_min(S: SurfaceType, L: DivisorClass) -> SeshadriEstimate:
    """The least Seshadri constant eps(L) = inf_x eps(L,x)."""
    require_ample(L)
    a, b = L.a, L.b
    if S.is_odd:
        return _exact(min(a, b), PROV_ODD, "odd")
    if _even1(S, L):
        return _exact(b, PROV_EVEN1, "even-1")
    v = _even2_value(S, L)
    if v is not None:
        return _exact(v, PROV_EVEN2, "even-2")
    L2 = self_intersection(L)
    if S.type_id == 6 and in_type6_gap(L):
        return SeshadriEstimate(
            Kind.UNKNOWN_WITH_BOUND,
            PROV_TYPE6_BOUND,
            "type6-gap",
            lower=_type6_point_bound(L),
            upper=make_surd(1, L2),
        )
    # Rational because some fibre ratio is sub-maximal (or L^2 is a square);
    # that fibre ratio is the attached upper bound.
    lower = min(bezout_bound(S, L, n) for n in S.fibre_mults)
    upper = min(fibre_ratio_bound(S, L, n) for n in S.fibre_mults)
    prov, branch = (PROV_TYPE6_RATIONAL, "type6-rational") if S.type_id == 6 else (PROV_RATIONAL, "rational")
    return SeshadriEstimate(Kind.CERTIFIED_RATIONAL, prov, branch, lower=_ev(lower), upper=_ev(upper))


# --- eps(L,1) ------------------------------------------------------------------


def _bounded(S, L, delta, upper, branch) -> SeshadriEstimate:
    return SeshadriEstimate(
        Kind.BOUNDED_BELOW,
        prov_type(S.type_id),
        branch,
        lower=make_surd(delta, self_intersection(L)),
        upper=_ev(upper),
    )


def check_delta(delta) -> Fraction:
    delta = Fraction(delta)
    feasible, bad = delta_feasibility(delta, Genus.VERY_GENERAL)
    if not feasible:
        raise DomainError(f"delta = {delta} is not admissible: the genus bound fails for m in {bad}")
    return delta


def epsilon_one(S: SurfaceType, L: DivisorClass, delta=DEFAULT_DELTA) -> SeshadriEstimate:
    """Seshadri constant at a very general point.

    Either the value is ``min(L.A, L.B)`` or it is at least ``delta*sqrt(L^2)``.
    Equalities at the regime boundaries resolve to the exact branch.
    """
    require_ample(L)
    delta = check_delta(delta)
    d2 = delta * delta
    a, b = L.a, L.b
    lo, hi = min(a, b), max(a, b)
    t = S.type_id
    p = prov_type(t)
    if t == 1:
        return _exact(min(a, 2 * b), p, "type1")
    if t == 2:
        if 2 * lo <= d2 * hi:
            return _exact(2 * lo, p, "type2(1)")
        return _bounded(S, L, delta, 2 * lo, "type2(2)")
    if t == 6:
        if 9 * lo <= 2 * d2 * hi:
            return _exact(3 * lo, p, "type6(1)")
        return _bounded(S, L, delta, 3 * lo, "type6(2)")
    # types 3, 4, 5, 7: two exact regimes around a bounded middle
    if t == 3:
        small, big = 8 * b <= a * d2, 2 * b * d2 >= a
        v_small, v_big = 4 * b, a
    elif t == 4:
        small, big = 8 * b <= a * d2, b * d2 >= 2 * a
        v_small, v_big = 4 * b, 2 * a
    elif t == 5:
        small, big = 9 * b <= 2 * a * d2, 2 * b * d2 >= a
        v_small, v_big = 3 * b, a
    else:
        small, big = 18 * b <= a * d2, 2 * b * d2 >= a
        v_small, v_big = 6 * b, a
    if small:
        return _exact(v_small, p, f"type{t}(1)")
    if big:
        return _exact(v_big, p, f"type{t}(3)")
    return _bounded(S, L, delta, min(v_small, v_big), f"type{t}(2)")


# --- eps(L,x) ------------------------------------------------------------------


def epsilon_at_point(
    S: SurfaceType, L: DivisorClass, x: PointClass, delta=DEFAULT_DELTA
) -> SeshadriEstimate:
    """Sharpest available statement about eps(L,x) for a class of points.

    ``x`` arbitrary means the worst point, so the upper bound is attained by
    some point and the lower bound holds for every point.
    """
    require_ample(L)
    x.validate(S)
    v = _even2_value(S, L)
    if v is not None:
        return _exact(v, PROV_EVEN2, "even-2")
    if x.kind is PointKind.VERY_GENERAL:
        return epsilon_one(S, L, delta)

    ns = x.fibre_mults(S)
    upper = _ev(min(fibre_ratio_bound(S, L, n) for n in ns))
    lower = _ev(min(bezout_bound(S, L, n) for n in ns))
    if S.is_odd:
        prov, branch = PROV_ODD, "odd"
    elif _even1(S, L) and S.mu in ns:
        return _exact(L.b, PROV_EVEN1, "even-1")
    elif S.type_id == 6 and in_type6_gap(L):
        lower = exact_max(lower, _type6_point_bound(L))
        prov, branch = PROV_TYPE6_BOUND, "type6-gap"
    else:
        prov, branch = PROV_BEZOUT, "bezout"
    if lower == upper:
        return _exact(lower.as_fraction(), prov, branch)
    return SeshadriEstimate(Kind.BOUNDED_BELOW, prov, branch, lower=lower, upper=upper)


# --- admissible delta ----------------------------------------------------------


def _genus_gap(delta2: Fraction, m: int, constraint: Genus) -> Fraction:
    """``(1 - delta^2) m^2 - m (+ 2)``: positive means multiplicity m is excluded."""
    base = (1 - delta2) * m * m - m
    return base + 2 if constraint is Genus.VERY_GENERAL else base


def _approx_roots(A: Fraction, c: int) -> tuple[Decimal, Decimal] | None:
    """Real roots of ``A m^2 - m + c`` to 50 digits, or None."""
    disc = 1 - 4 * A * c
    if disc < 0:
        return None
    with localcontext() as ctx:
        ctx.prec = 50
        s = (Decimal(disc.numerator) / Decimal(disc.denominator)).sqrt()
        twoA = 2 * Decimal(A.numerator) / Decimal(A.denominator)
        return (1 - s) / twoA, (1 + s) / twoA


def delta_feasibility(delta, constraint: Genus = Genus.VERY_GENERAL) -> tuple[bool, list[int]]:
    """Integers m >= 2 at which the genus bound fails to exclude ratio < delta*sqrt(L^2).

    For the very general bound the condition is ``(1-delta^2) m^2 - m + 2 > 0``,
    for the general one ``(1-delta^2) m^2 - m >= 0``.  The set of failures is
    an interval between the roots of the quadratic and is located exactly.
    """
    delta = Fraction(delta)
    constraint = Genus(constraint)
    if not 0 < delta < 1:
        raise DomainError(f"delta must lie in (0, 1), got {delta}")
    d2 = delta * delta

    def bad(m: int) -> bool:
        g = _genus_gap(d2, m, constraint)
        return g <= 0 if constraint is Genus.VERY_GENERAL else g < 0

    roots = _approx_roots(1 - d2, 2 if constraint is Genus.VERY_GENERAL else 0)
    if roots is None:
        return True, []
    lo = max(2, int(roots[0]))
    hi = max(2, int(roots[1]) + 1)
    # tighten the approximate interval with exact evaluations
    while lo > 2 and bad(lo - 1):
        lo -= 1
    while lo <= hi and not bad(lo):
        lo += 1
    while hi >= lo and not bad(hi):
        hi -= 1
    while bad(hi + 1):
        hi += 1
    violating = list(range(lo, hi + 1))
    return not violating, violating


def max_feasible_delta(constraint: Genus = Genus.VERY_GENERAL) -> tuple[Fraction, int]:
    """``(sup delta^2, m)``: the minimum over m >= 2 of the genus bound divided by m^2.

    As a function of ``t = 1/m`` the ratio is ``1 - t (+ 2 t^2)``, which
    increases in m past the vertex ``t = 1/4`` (very general) and
    everywhere (general), so a short finite scan finds the minimum.
    """
    constraint = Genus(constraint)
    extra = 2 if constraint is Genus.VERY_GENERAL else 0
    best = None
    for m in range(2, 9):
        v = Fraction(m * m - m + extra, m * m)
        if best is None or v < best[0]:
            best = (v, m)
    return best
