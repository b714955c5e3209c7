"""Numerical classes on hyperelliptic surfaces.

Num(X) has rank 2 for every hyperelliptic surface.  We always work in the
basis ``e1 = A/mu``, ``e2 = (mu/gamma) B`` where ``A`` and ``B`` are the
fibre classes of the two natural fibrations, ``gamma = |G|`` and ``mu`` is
the lcm of the multiplicities of the singular fibres of ``Psi``.  In this
basis ``e1^2 = e2^2 = 0`` and ``e1.e2 = 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .errors import DomainError, NotAmpleError


@dataclass(frozen=True)
class SurfaceType:
    type_id: int
    group_name: str
    gamma: int
    mu: int
    sing_mults: tuple[int, ...]

    @property
    def is_odd(self) -> bool:
        return self.type_id % 2 == 1

    @property
    def phi_coeff(self) -> int:
        """gamma/mu: the Phi-fibre B has class (0, gamma/mu)."""
        return self.gamma // self.mu

    @property
    def fibre_mults(self) -> tuple[int, ...]:
        """Possible multiplicities of the Psi-fibre through a point, smooth fibres included."""
        return tuple(sorted({1, *self.sing_mults}))


def _row(type_id: int, group_name: str, gamma: int, mults: tuple[int, ...]) -> SurfaceType:
    return SurfaceType(type_id, group_name, gamma, lcm(*mults), mults)


SURFACES: dict[int, SurfaceType] = {
    s.type_id: s
    for s in (
        _row(1, "Z2", 2, (2, 2, 2, 2)),
        _row(2, "Z2xZ2", 4, (2, 2, 2, 2)),
        _row(3, "Z4", 4, (2, 4, 4)),
        _row(4, "Z4xZ2", 8, (2, 4, 4)),
        _row(5, "Z3", 3, (3, 3, 3)),
        _row(6, "Z3xZ3", 9, (3, 3, 3)),
        _row(7, "Z6", 6, (2, 3, 6)),
    )
}


@dataclass(frozen=True)
class DivisorClass:
    a: int
    b: int

    def __post_init__(self):
        for v in (self.a, self.b):
            if isinstance(v, bool) or not isinstance(v, int):
                raise DomainError(f"divisor coordinates must be integers, got {v!r}")

    def __mul__(self, k: int) -> "DivisorClass":
        return DivisorClass(k * self.a, k * self.b)

    __rmul__ = __mul__

    def __str__(self):
        return f"({self.a},{self.b})"

    @classmethod
    def parse(cls, text: str) -> "DivisorClass":
        """Parse ``"a,b"`` (parentheses optional).  Rational entries are rejected."""
        parts = text.strip().strip("()").split(",")
        if len(parts) != 2:
            raise DomainError(f"expected 'a,b', got {text!r}")
        try:
            a, b = (int(p.strip()) for p in parts)
        except ValueError:
            raise DomainError(f"divisor coordinates must be integers, got {text!r}") from None
        return cls(a, b)


def surface_params(type_id: int) -> SurfaceType:
    try:
        return SURFACES[type_id]
    except (KeyError, TypeError):
        raise DomainError(f"surface type must be in 1..7, got {type_id!r}") from None


def intersect(d1: DivisorClass, d2: DivisorClass) -> int:
    return d1.a * d2.b + d2.a * d1.b


def self_intersection(d: DivisorClass) -> int:
    return intersect(d, d)


def is_ample(L: DivisorClass) -> bool:
    return L.a > 0 and L.b > 0


def require_ample(L: DivisorClass) -> None:
    if not is_ample(L):
        raise NotAmpleError(f"line bundle {L} is not ample (need a > 0 and b > 0)")


def fibre_classes(S: SurfaceType) -> tuple[DivisorClass, DivisorClass]:
    """Return ``(A, B)``: a smooth Psi-fibre and a Phi-fibre."""
    return DivisorClass(S.mu, 0), DivisorClass(0, S.phi_coeff)


def is_effective_vertical(b, S: SurfaceType) -> bool:
    """Whether ``(0, b)`` is effective, i.e. ``b * mu/gamma`` is a natural number."""
    t = Fraction(b) * Fraction(S.mu, S.gamma)
    return t.denominator == 1 and t >= 0


def self_test() -> None:
    """Check the hard-coded surface table against its structural invariants."""
    expected_gamma = {1: 2, 2: 4, 3: 4, 4: 8, 5: 3, 6: 9, 7: 6}
    expected_ratio = {1: 1, 2: 2, 3: 1, 4: 2, 5: 1, 6: 3, 7: 1}
    for t, S in SURFACES.items():
        assert S.type_id == t
        assert S.gamma == expected_gamma[t]
        assert S.mu == max(S.sing_mults)
        assert S.gamma % S.mu == 0 and S.phi_coeff == expected_ratio[t]
        A, B = fibre_classes(S)
        assert intersect(A, B) == S.gamma
        assert self_intersection(A) == self_intersection(B) == 0
