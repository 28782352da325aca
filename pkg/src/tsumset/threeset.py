"""Closed forms for three-element sets ``{0, a, m}`` with ``gcd(a, m) = 1``.

These formulas are independent of the dynamic-programming machinery and are
used to cross-check it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .core import DEFAULT_LIMITS, DomainError, IntegerSet, InvalidInputError, Limits
from .frobenius import exceptional_set
from .structure import StructureContext


def _frac(x: Fraction) -> Fraction:
    return x - (x.numerator // x.denominator)


@dataclass(frozen=True)
class ThreeSet:
    a: int
    m: int
    a_inv: int = field(init=False)
    m_inv: int = field(init=False)

    def __post_init__(self) -> None:
        if not 0 < self.a < self.m:
            raise InvalidInputError(f"need 0 < a < m, got a={self.a}, m={self.m}")
        if gcd(self.a, self.m) != 1:
            raise InvalidInputError(f"gcd({self.a}, {self.m}) != 1")
        object.__setattr__(self, "a_inv", pow(self.a, -1, self.m))
        object.__setattr__(self, "m_inv", pow(self.m, -1, self.a) if self.a > 1 else 0)

    @property
    def set(self) -> IntegerSet:
        return IntegerSet((0, self.a, self.m))


def rho_closed(T: ThreeSet, n: int) -> int:
    """``n/(am) - {n a^-1 / m} - {n m^-1 / a} + 1`` in exact arithmetic."""
    if n < 0:
        return 0
    value = (
        Fraction(n, T.a * T.m)
        - _frac(Fraction(n * T.a_inv, T.m))
        - _frac(Fraction(n * T.m_inv, T.a))
        + 1
    )
    if value.denominator != 1 or value < 0:
        raise ArithmeticError(f"closed form gave non-integer {value} for {T}, n={n}")
    return value.numerator


def frobenius_t_closed(T: ThreeSet, t: int) -> int:
    """``t a m - a - m``; 0 when the exceptional set is empty (a = 1, t = 1)."""
    if t < 1:
        raise DomainError(f"t must be positive, got {t}")
    return max(t * T.a * T.m - T.a - T.m, 0)


def exceptional_size_closed(T: ThreeSet, t: int) -> int:
    """``(t-1) a m + (a-1)(m-1)/2``."""
    if t < 1:
        raise DomainError(f"t must be positive, got {t}")
    return (t - 1) * T.a * T.m + (T.a - 1) * (T.m - 1) // 2


def shift_identity_check(T: ThreeSet, t: int, *, limits: Limits = DEFAULT_LIMITS) -> bool:
    """``E_t = [0, (t-1)am - 1]  U  ((t-1)am + E_1)``, compared by enumeration."""
    base = (t - 1) * T.a * T.m
    E1 = exceptional_set(T.set, 1, limits=limits).members
    expected = list(range(base)) + [base + n for n in E1]
    return list(exceptional_set(T.set, t, limits=limits).members) == expected


def always_structured_check(
    T: ThreeSet, t: int, h_max: int, *, limits: Limits = DEFAULT_LIMITS
) -> bool:
    if h_max < 1:
        raise DomainError(f"h_max must be at least 1, got {h_max}")
    ctx = StructureContext(T.set, t, limits=limits)
    return all(ctx.structured(h) for h in range(1, h_max + 1))


def interval_threshold(T: ThreeSet, t: int) -> Fraction:
    """``(Fr_t(A) + Fr_t(m-A) + 1) / m``; the middle interval is nonempty only above it."""
    fr = frobenius_t_closed(T, t)
    fr_ref = frobenius_t_closed(ThreeSet(T.m - T.a, T.m), t)
    return Fraction(fr + fr_ref + 1, T.m)
