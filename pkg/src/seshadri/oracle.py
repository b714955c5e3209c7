"""Independent certification of Seshadri constants by exhaustive search.

For a point ``x`` on a Psi-fibre of multiplicity ``n`` every irreducible
curve ``C = (alpha, beta)`` through ``x`` with multiplicity ``m`` is either a
fibre through ``x`` or satisfies

* ``(gamma/mu) alpha >= m`` (Bezout against the Phi-fibre through x),
* ``mu beta >= m n`` (Bezout against the Psi-fibre through x),
* ``2 alpha beta >= m^2 - m`` (genus bound), or ``>= m^2 - m + 2`` for
  ``m >= 2`` when ``x`` is very general.

Minimising ``L.C / m = (a beta + b alpha) / m`` over that relaxation gives a
certified lower bound.  Multiplicities ``m <= M`` are scanned exactly; all
larger ones are covered by :func:`tail_bound`.  The fibres through ``x``
give an attained upper bound.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import isqrt

from .closedform import (
    Genus,
    Kind,
    PointClass,
    PointKind,
    SeshadriEstimate,
    epsilon_at_point,
    epsilon_min,
    epsilon_one,
    fibre_ratio_bound,
)
from .errors import DomainError
from .exactnum import ExactValue, exact_min, make_surd
from .numlattice import DivisorClass, SurfaceType, require_ample, surface_params

DEFAULT_SCAN_LIMIT = 200


@dataclass(frozen=True)
class CurveCandidate:
    alpha: int
    beta: int
    m: int

    def sort_key(self) -> tuple[int, int, int]:
        return (self.m, self.alpha, self.beta)

    def to_json(self) -> dict:
        return {"alpha": self.alpha, "beta": self.beta, "m": self.m}


@dataclass(frozen=True)
class OracleReport:
    point: PointClass
    lower: ExactValue
    upper: ExactValue
    scan_min: Fraction
    witnesses: tuple[CurveCandidate, ...]
    scan_limit: int
    tail_bound: ExactValue

    @property
    def certified(self) -> bool:
        return self.lower == self.upper

    def to_json(self) -> dict:
        return {
            "point": self.point.to_json(),
            "lower": self.lower.to_json(),
            "upper": self.upper.to_json(),
            "scan_min": str(self.scan_min),
            "witnesses": [w.to_json() for w in self.witnesses],
            "scan_limit": self.scan_limit,
            "tail_bound": self.tail_bound.to_json(),
        }


def genus_floor(m: int, genus: Genus) -> int:
    """Least admissible value of ``C^2 = 2 alpha beta`` for multiplicity m."""
    extra = 2 if genus is Genus.VERY_GENERAL and m >= 2 else 0
    return m * m - m + extra


def _ceil_div(p: int, q: int) -> int:
    return -(-p // q)


def bezout_corner(S: SurfaceType, n: int, m: int) -> tuple[int, int]:
    """Smallest ``(alpha, beta)`` allowed by Bezout for a non-fibre curve."""
    return max(1, _ceil_div(m, S.phi_coeff)), max(1, _ceil_div(m * n, S.mu))


def _min_for_m(a: int, b: int, alpha0: int, beta0: int, g: int, cap: int | None):
    """Minimise ``a beta + b alpha`` over integers with alpha >= alpha0, beta >= beta0, 2 alpha beta >= g.

    Returns ``(objective, [alpha, ...])`` listing every minimising alpha (beta
    is then forced), or None when the minimum exceeds ``cap``.
    """
    if 2 * alpha0 * beta0 >= g:
        obj = a * beta0 + b * alpha0
        return None if cap is not None and obj > cap else (obj, [alpha0])

    def h(al: int) -> int:
        return b * al + a * max(beta0, _ceil_div(g, 2 * al))

    # from alpha_c on, beta0 suffices and the cost only grows with alpha
    alpha_c = _ceil_div(g, 2 * beta0)
    guess = min(max(alpha0, isqrt(a * g // (2 * b))), alpha_c)
    U = min(h(alpha_c), h(guess), h(min(guess + 1, alpha_c)))
    if cap is not None:
        U = min(U, cap)
    cands = [alpha_c]
    # h(al) >= b al + a g / (2 al), a convex function; keep al where that is <= U
    D = U * U - 2 * a * b * g
    if D >= 0:
        s = isqrt(D)
        lo = max(alpha0, (U - s - 1) // (2 * b))
        hi = min(alpha_c - 1, (U + s + 1) // (2 * b) + 1)
        cands.extend(range(lo, hi + 1))
    best, alphas = None, []
    for al in sorted(set(cands)):
        v = h(al)
        if best is None or v < best:
            best, alphas = v, [al]
        elif v == best:
            alphas.append(al)
    if cap is not None and best > cap:
        return None
    return best, alphas


@lru_cache(maxsize=8192)
def scan(type_id: int, a: int, b: int, n: int, genus: Genus, M: int):
    """Exact minimum of ``(a beta + b alpha)/m`` over non-fibre candidates with ``m <= M``.

    Returns ``(minimum, witnesses)`` with witnesses in ``(m, alpha, beta)`` order.
    """
    S = surface_params(type_id)
    best: Fraction | None = None
    wits: list[CurveCandidate] = []
    for m in range(1, M + 1):
        alpha0, beta0 = bezout_corner(S, n, m)
        g = genus_floor(m, genus)
        cap = None if best is None else (best * m).__floor__()
        if cap is not None and a * beta0 + b * alpha0 > cap:
            continue
        res = _min_for_m(a, b, alpha0, beta0, g, cap)
        if res is None:
            continue
        obj, alphas = res
        ratio = Fraction(obj, m)
        new = [CurveCandidate(al, max(beta0, _ceil_div(g, 2 * al)), m) for al in alphas]
        if best is None or ratio < best:
            best, wits = ratio, new
        elif ratio == best:
            wits.extend(new)
    return best, tuple(sorted(wits, key=CurveCandidate.sort_key))


def tail_bound(S: SurfaceType, L: DivisorClass, n: int, M: int) -> ExactValue:
    """Lower bound on ``L.C/m`` for every non-fibre candidate with ``m > M``.

    Rescaling ``(alpha, beta)`` by ``1/m`` lands in the convex region
    ``x >= mu/gamma``, ``y >= n/mu``, ``2xy >= 1 - 1/M``, so the minimum of
    ``a y + b x`` over that region bounds all such ratios.  It is never
    smaller than the Hodge index bound ``sqrt(L^2 (1 - 1/M))``.
    """
    a, b = L.a, L.b
    c = Fraction(M - 1, M)
    x0, y0 = Fraction(1, S.phi_coeff), Fraction(n, S.mu)
    if 2 * x0 * y0 >= c:
        return ExactValue(a * y0 + b * x0)
    # unconstrained optimum on the hyperbola: x*^2 = a c / 2b, y*^2 = b c / 2a
    if a * c / (2 * b) < x0 * x0:
        return ExactValue(a * c / (2 * x0) + b * x0)
    if b * c / (2 * a) < y0 * y0:
        return ExactValue(b * c / (2 * y0) + a * y0)
    return make_surd(Fraction(1, M), 2 * a * b * M * (M - 1))


def _genus_for(x: PointClass) -> Genus:
    return Genus.VERY_GENERAL if x.kind is PointKind.VERY_GENERAL else Genus.GENERAL


def certify_point(
    S: SurfaceType, L: DivisorClass, x: PointClass, M: int = DEFAULT_SCAN_LIMIT
) -> OracleReport:
    """Certified bounds ``lower <= eps(L,x) <= upper`` for a class of points.

    For ``x`` arbitrary the bounds are on ``eps(L)``: the lower bound holds at
    every point and the upper bound is attained at the worst one.
    """
    require_ample(L)
    x.validate(S)
    if M < 2:
        raise DomainError(f"scan limit must be at least 2, got {M}")
    genus = _genus_for(x)
    lowers, uppers, tails, mins = [], [], [], []
    wits: set[CurveCandidate] = set()
    per_n = []
    for n in x.fibre_mults(S):
        fib = fibre_ratio_bound(S, L, n)
        smin, w = scan(S.type_id, L.a, L.b, n, genus, M)
        tail = tail_bound(S, L, n, M)
        per_n.append((smin, w))
        uppers.append(ExactValue(fib))
        tails.append(tail)
        mins.append(smin)
        lowers.append(exact_min(ExactValue(fib), ExactValue(smin), tail))
    scan_min = min(mins)
    for smin, w in per_n:
        if smin == scan_min:
            wits.update(w)
    return OracleReport(
        point=x,
        lower=exact_min(*lowers),
        upper=exact_min(*uppers),
        scan_min=scan_min,
        witnesses=tuple(sorted(wits, key=CurveCandidate.sort_key)),
        scan_limit=M,
        tail_bound=exact_min(*tails),
    )


def brute_force_lower(S: SurfaceType, L: DivisorClass, n: int, genus: Genus, M: int):
    """Plain 2-D enumeration of the same relaxation, fibres and their multiples included.

    Slow; used to cross-check :func:`scan` on small inputs.  Returns
    ``(minimum over all candidates, scan minimum, scan witnesses)``.
    """
    a, b = L.a, L.b
    r, mu = S.phi_coeff, S.mu
    best_all: Fraction | None = None
    best_scan: Fraction | None = None
    wits: list[CurveCandidate] = []
    for m in range(1, M + 1):
        g = genus_floor(m, genus)
        # fibre multiples k*(0, r) and k*(mu/n, 0): C^2 = 0 allows m = 1 only
        if g <= 0:
            for k in range(1, 3):
                for v in (Fraction(k * r * a, m), Fraction(k * mu * b, n * m)):
                    best_all = v if best_all is None else min(best_all, v)
        bound = max(m, g, 1) + 1
        for al in range(1, bound + 1):
            if r * al < m:
                continue
            for be in range(1, bound + 1):
                if mu * be < m * n or 2 * al * be < g:
                    continue
                v = Fraction(a * be + b * al, m)
                cand = CurveCandidate(al, be, m)
                if best_scan is None or v < best_scan:
                    best_scan, wits = v, [cand]
                elif v == best_scan:
                    wits.append(cand)
    best_all = min(best_all, best_scan)
    return best_all, best_scan, tuple(sorted(wits, key=CurveCandidate.sort_key))


# --- region sweeps ---------------------------------------------------------------


@dataclass(frozen=True)
class Check:
    query: str
    point: PointClass
    estimate: SeshadriEstimate
    report: OracleReport
    ok: bool
    certified: bool

    def to_json(self) -> dict:
        return {
            "query": self.query,
            "point": self.point.to_json(),
            "estimate": self.estimate.to_json(),
            "oracle": self.report.to_json(),
            "ok": self.ok,
            "certified": self.certified,
        }


@dataclass(frozen=True)
class CellResult:
    type_id: int
    L: DivisorClass
    checks: tuple[Check, ...] = field(default_factory=tuple)

    @property
    def verdict(self) -> str:
        return "PASS" if all(c.ok for c in self.checks) else "FAIL"

    def to_json(self) -> dict:
        return {
            "type": self.type_id,
            "L": [self.L.a, self.L.b],
            "verdict": self.verdict,
            "checks": [c.to_json() for c in self.checks],
        }

    def to_json_line(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, ensure_ascii=False, separators=(",", ":"))


def agrees(est: SeshadriEstimate, rep: OracleReport) -> tuple[bool, bool]:
    """``(consistent, certified)`` for a closed-form estimate against an oracle report."""
    if est.kind is Kind.EXACT:
        v = ExactValue(est.value)
        ok = rep.lower <= v <= rep.upper and (not rep.certified or v == rep.lower)
        return ok, ok and rep.certified
    ok = True
    if est.lower is not None:
        ok = ok and est.lower <= rep.lower
    if est.upper is not None:
        ok = ok and rep.lower <= est.upper
    return ok, False


def _make_check(query, point, est, rep) -> Check:
    ok, cert = agrees(est, rep)
    return Check(query, point, est, rep, ok, cert)


def check_cell(S: SurfaceType, L: DivisorClass, M: int = DEFAULT_SCAN_LIMIT) -> CellResult:
    arb, vg = PointClass.arbitrary(), PointClass.very_general()
    rep_arb = certify_point(S, L, arb, M)
    rep_vg = certify_point(S, L, vg, M)
    checks = [
        _make_check("epsilon_min", arb, epsilon_min(S, L), rep_arb),
        _make_check("epsilon_one", vg, epsilon_one(S, L), rep_vg),
        _make_check("epsilon_at_point", arb, epsilon_at_point(S, L, arb), rep_arb),
    ]
    for n in sorted(set(S.sing_mults)):
        x = PointClass.on_singular_fibre(n)
        checks.append(_make_check("epsilon_at_point", x, epsilon_at_point(S, L, x), certify_point(S, L, x, M)))
    return CellResult(S.type_id, L, tuple(checks))


def _row(args) -> list[CellResult]:
    type_id, a, b_max, M = args
    S = surface_params(type_id)
    return [check_cell(S, DivisorClass(a, b), M) for b in range(1, b_max + 1)]


def cross_check_region(
    S: SurfaceType, a_max: int, b_max: int, M: int = DEFAULT_SCAN_LIMIT, workers: int | None = None
) -> list[CellResult]:
    """Compare every closed-form statement with the oracle on ``1 <= a <= a_max, 1 <= b <= b_max``.

    Cells come back in ``(a, b)`` order whatever the number of workers.
    """
    if a_max < 1 or b_max < 1:
        raise DomainError("grid bounds must be at least 1")
    jobs = [(S.type_id, a, b_max, M) for a in range(1, a_max + 1)]
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_row, jobs))
    else:
        rows = [_row(j) for j in jobs]
    return [cell for row in rows for cell in row]
