"""t-exceptional sets and Frobenius-t numbers in Z."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import factorial, prod

from .core import (
    DEFAULT_LIMITS,
    DomainError,
    IntegerSet,
    InternalInconsistencyError,
    Limits,
    ResourceLimitError,
)

BRACKET_BITS = 32


def iroot(x: int, k: int) -> int:
    """Floor of the k-th root of a nonnegative integer."""
    if x < 0 or k < 1:
        raise ValueError("iroot needs x >= 0 and k >= 1")
    if x < 2 or k == 1:
        return x
    r = 1 << -(-x.bit_length() // k)  # r**k >= x
    while True:
        s = ((k - 1) * r + x // r ** (k - 1)) // k
        if s >= r:
            break
        r = s
    while r**k > x:
        r -= 1
    while (r + 1) ** k <= x:
        r += 1
    return r


@dataclass(frozen=True)
class ExceptionalSet:
    set: IntegerSet
    t: int
    members: tuple[int, ...]

    @property
    def frobenius_t(self) -> int:
        return self.members[-1] if self.members else 0

    def __contains__(self, n: object) -> bool:
        return n in self._lookup

    def __len__(self) -> int:
        return len(self.members)

    @cached_property
    def _lookup(self) -> frozenset[int]:
        return frozenset(self.members)

    def to_dict(self) -> dict:
        return {"t": self.t, "frobenius_t": self.frobenius_t, "members": list(self.members)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, A: IntegerSet, text: str) -> "ExceptionalSet":
        data = json.loads(text)
        members = tuple(data["members"])
        out = cls(A, int(data["t"]), members)
        if out.frobenius_t != data["frobenius_t"]:
            raise DomainError("frobenius_t does not match the member list")
        return out


def _leading_radicand(A: IntegerSet, t: int) -> int:
    # (a1 ... a_{ell+1}) * ell! * (t - 1), whose ell-th root leads both brackets
    return prod(A.nonzero) * factorial(A.ell) * (t - 1)


def frobenius_brackets(
    A: IntegerSet, t: int, bits: int = BRACKET_BITS
) -> tuple[Fraction, Fraction]:
    """Rational enclosure of the classical estimates for ``Fr_t(A)``.

    The irrational leading root is rounded down in the lower value and up in
    the upper value, to ``2**-bits`` resolution.
    """
    if t < 1:
        raise DomainError(f"t must be positive, got {t}")
    if A.ell == 0:
        raise DomainError("brackets need at least one interior element (ell >= 1)")
    scale = 1 << bits
    X = _leading_radicand(A, t) * scale**A.ell
    lo = iroot(X, A.ell)
    hi = lo if lo**A.ell == X else lo + 1
    s = sum(A.elements[2:])
    lower = Fraction(lo, scale) - s - 2
    upper = Fraction(hi, scale) + (A.a1 - 1) * s
    return lower, upper


def bracket_holds(A: IntegerSet, t: int, fr: int) -> tuple[bool, bool]:
    """Exact integer test of ``lower < fr`` and ``fr <= upper`` (no rounding at all)."""
    X = _leading_radicand(A, t)
    s = sum(A.elements[2:])
    # fr > X^(1/ell) - s - 2  <=>  (fr + s + 2)^ell > X, as fr + s + 2 > 0
    lower_ok = (fr + s + 2) ** A.ell > X
    # fr <= X^(1/ell) + (a1 - 1) s
    base = fr - (A.a1 - 1) * s
    upper_ok = base <= 0 or base**A.ell <= X
    return lower_ok, upper_ok


def scan_cap(A: IntegerSet, t: int) -> int:
    """Hard limit for the exceptional-set scan: ceil(upper bracket) + m."""
    _, upper = frobenius_brackets(A, t)
    return -(-upper.numerator // upper.denominator) + A.m


def exceptional_set(
    A: IntegerSet, t: int, *, limits: Limits = DEFAULT_LIMITS
) -> ExceptionalSet:
    """All n >= 0 with fewer than t representations.

    The scan stops after m consecutive values with at least t representations;
    from there on ``rho_A(n + m) >= rho_A(n)`` keeps every later value above t.
    """
    if t < 1:
        raise DomainError(f"t must be positive, got {t}")
    if t > limits.max_t:
        raise ResourceLimitError(f"t = {t} exceeds the cap {limits.max_t}")
    if A.ell == 0:
        # A = {0, 1}: every n has exactly one representation
        if t == 1:
            return ExceptionalSet(A, t, ())
        raise DomainError("for A = {0,1} and t >= 2 the exceptional set is infinite")

    cap = scan_cap(A, t)
    coins = A.nonzero
    partial: list[list[int]] = [[] for _ in coins]
    members: list[int] = []
    run = 0
    n = 0
    while run < A.m:
        if n > cap:
            raise InternalInconsistencyError(
                f"exceptional-set scan for {A}, t={t} passed the bracket cap {cap}"
            )
        count = 1 if n == 0 else 0
        for col, a in zip(partial, coins):
            if n >= a:
                count += col[n - a]
            col.append(count)
        if count >= t:
            run += 1
        else:
            run = 0
            members.append(n)
        n += 1
    return ExceptionalSet(A, t, tuple(members))


def frobenius_t(A: IntegerSet, t: int, *, limits: Limits = DEFAULT_LIMITS) -> int:
    return exceptional_set(A, t, limits=limits).frobenius_t
