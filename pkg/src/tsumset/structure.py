"""t-representable sumsets ``(hA)^(t)``, the structure predicate, h_t and its bounds."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .core import (
    DEFAULT_LIMITS,
    DomainError,
    IntegerSet,
    InternalInconsistencyError,
    Limits,
    ResourceLimitError,
    reflect,
)
from .denumerant import cumulative_parts, parts_table
from .frobenius import exceptional_set

WITNESS_LIMIT = 32


@dataclass(frozen=True)
class StructureReport:
    set: IntegerSet
    h: int
    t: int
    lhs: tuple[int, ...]
    rhs: tuple[int, ...]
    witnesses: tuple[int, ...]

    @property
    def structured(self) -> bool:
        return not self.witnesses

    def to_dict(self, witness_limit: int = WITNESS_LIMIT) -> dict:
        return {
            "set": str(self.set),
            "h": self.h,
            "t": self.t,
            "structured": self.structured,
            "lhs_size": len(self.lhs),
            "rhs_size": len(self.rhs),
            "witnesses": list(self.witnesses[:witness_limit]),
            "witnesses_truncated": len(self.witnesses) > witness_limit,
        }


class StructureContext:
    """Shared state for repeated structure checks on one ``(A, t)``.

    The two exceptional sets do not depend on h and are computed once; the
    representation table is grown on demand and saturated at t.
    """

    def __init__(self, A: IntegerSet, t: int, *, limits: Limits = DEFAULT_LIMITS):
        if t < 1:
            raise DomainError(f"t must be positive, got {t}")
        self.A = A
        self.t = t
        self.limits = limits
        self.E = exceptional_set(A, t, limits=limits)
        self.E_reflected = exceptional_set(reflect(A), t, limits=limits)
        self._rows: np.ndarray | None = None

    def _ensure(self, h: int) -> np.ndarray:
        if self._rows is None or self._rows.shape[0] <= h:
            if h * self.A.m > self.limits.max_hm:
                raise ResourceLimitError(
                    f"h*m = {h * self.A.m} exceeds the cap {self.limits.max_hm}"
                )
            # grow geometrically so a scan over h rebuilds only O(log h) times
            size = h if self._rows is None else max(h, 2 * (self._rows.shape[0] - 1))
            T = parts_table(self.A, size, saturate=self.t, limits=self.limits)
            self._rows = cumulative_parts(T, saturate=self.t)
        return self._rows

    def lhs_mask(self, h: int) -> np.ndarray:
        rows = self._ensure(h)
        return rows[h, : h * self.A.m + 1] >= self.t

    def rhs_mask(self, h: int) -> np.ndarray:
        hm = h * self.A.m
        mask = np.ones(hm + 1, dtype=bool)
        for n in self.E.members:
            if n > hm:
                break
            mask[n] = False
        for n in self.E_reflected.members:
            if n > hm:
                break
            mask[hm - n] = False
        return mask

    def report(self, h: int) -> StructureReport:
        if h < 0:
            raise DomainError(f"h must be nonnegative, got {h}")
        lhs = self.lhs_mask(h)
        rhs = self.rhs_mask(h)
        if np.any(lhs & ~rhs):
            bad = np.flatnonzero(lhs & ~rhs).tolist()
            raise InternalInconsistencyError(
                f"(hA)^(t) escapes the structured set for {self.A}, h={h}, t={self.t}: {bad[:8]}"
            )
        return StructureReport(
            self.A,
            h,
            self.t,
            tuple(np.flatnonzero(lhs).tolist()),
            tuple(np.flatnonzero(rhs).tolist()),
            tuple(np.flatnonzero(lhs != rhs).tolist()),
        )

    def structured(self, h: int) -> bool:
        lhs = self.lhs_mask(h)
        rhs = self.rhs_mask(h)
        if np.any(lhs & ~rhs):
            raise InternalInconsistencyError(
                f"(hA)^(t) escapes the structured set for {self.A}, h={h}, t={self.t}"
            )
        return bool(np.array_equal(lhs, rhs))


def t_sumset(A: IntegerSet, h: int, t: int, *, limits: Limits = DEFAULT_LIMITS) -> list[int]:
    """Sorted members of ``(hA)^(t)``: all n in [0, hm] with at least t representations."""
    if h < 0:
        raise DomainError(f"h must be nonnegative, got {h}")
    if t < 1:
        raise DomainError(f"t must be positive, got {t}")
    if h * A.m > limits.max_hm:
        raise ResourceLimitError(f"h*m = {h * A.m} exceeds the cap {limits.max_hm}")
    T = parts_table(A, h, saturate=t, limits=limits)
    row = cumulative_parts(T, saturate=t)[h]
    return np.flatnonzero(row >= t).tolist()


def structured_rhs(A: IntegerSet, h: int, t: int, *, limits: Limits = DEFAULT_LIMITS) -> list[int]:
    """``[0, hm]`` minus ``E_t(A)`` and minus ``hm - E_t(m - A)``."""
    ctx = StructureContext(A, t, limits=limits)
    return np.flatnonzero(ctx.rhs_mask(h)).tolist()


def is_structured(A: IntegerSet, h: int, t: int, *, limits: Limits = DEFAULT_LIMITS) -> StructureReport:
    return StructureContext(A, t, limits=limits).report(h)


def h_plus_minus(A: IntegerSet, t: int, *, limits: Limits = DEFAULT_LIMITS) -> tuple[int, int]:
    fr = exceptional_set(A, t, limits=limits).frobenius_t
    fr_ref = exceptional_set(reflect(A), t, limits=limits).frobenius_t
    hp = -(-(fr + A.m) // A.a1)
    hm_ = -(-(fr_ref + A.m) // (A.m - A.a_ell))
    if A.ell >= 1 and (min(hp, hm_) < 2 or hp + hm_ - 2 < max(hp, hm_)):
        raise InternalInconsistencyError(f"H+ = {hp}, H- = {hm_} violate H+ + H- - 2 >= max")
    return hp, hm_


def bound_mt1(A: IntegerSet, t: int, *, limits: Limits = DEFAULT_LIMITS) -> int:
    """``floor((Fr_t(A)+m)/a1) + floor((Fr_t(m-A)+m)/(m-a_ell))``."""
    fr = exceptional_set(A, t, limits=limits).frobenius_t
    fr_ref = exceptional_set(reflect(A), t, limits=limits).frobenius_t
    return (fr + A.m) // A.a1 + (fr_ref + A.m) // (A.m - A.a_ell)


def mt2_constant(A: IntegerSet, t: int) -> float:
    """Explicit upper estimate for the constant in the ``m*ell*t^(1/ell)/e`` bound."""
    if A.ell == 0:
        raise DomainError("the constant needs ell >= 1")
    ell = A.ell
    root_t = math.exp(math.log(t) / ell)
    return (1 + 4 / ell) * math.e / root_t + (1 + 2 / ell) * (
        1 + math.log(4 * ell) / ell
    ) / min(A.a1, A.m - A.a_ell)


def bound_mt2(A: IntegerSet, t: int) -> tuple[float, int]:
    if t < 1:
        raise DomainError(f"t must be positive, got {t}")
    c = mt2_constant(A, t)
    if A.ell >= 4 and c > 3 * math.e:
        raise InternalInconsistencyError(f"constant {c} exceeds 3e although ell >= 4")
    root_t = math.exp(math.log(t) / A.ell)
    return c, math.ceil(c / math.e * A.m * A.ell * root_t)


def bound_yz(A: IntegerSet, t: int) -> int:
    """``sum_{i>=2} (t a_i - 1) - 1``."""
    return sum(t * a - 1 for a in A.elements[2:]) - 1


@dataclass(frozen=True)
class BoundsReport:
    mt1: int
    mt2_constant: float | None
    mt2: int | None
    yang_zhou: int
    h_plus: int
    h_minus: int

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def bounds(A: IntegerSet, t: int, *, limits: Limits = DEFAULT_LIMITS) -> BoundsReport:
    hp, hm_ = h_plus_minus(A, t, limits=limits)
    c, b2 = bound_mt2(A, t) if A.ell >= 1 else (None, None)
    return BoundsReport(bound_mt1(A, t, limits=limits), c, b2, bound_yz(A, t), hp, hm_)


@dataclass(frozen=True)
class HtScan:
    set: IntegerSet
    t: int
    ht: int
    cap: int
    failures: tuple[int, ...] = field(default=())

    def to_dict(self) -> dict:
        return {
            "set": str(self.set),
            "t": self.t,
            "ht_exact": self.ht,
            "mt1_cap": self.cap,
            "unstructured_h": list(self.failures),
        }


def ht_scan(
    A: IntegerSet, t: int, *, ctx: StructureContext | None = None, limits: Limits = DEFAULT_LIMITS
) -> HtScan:
    """Scan every h in ``[1, bound_mt1]`` and return 1 + the last failure.

    Structure need not be monotone in h, so the scan never stops at the
    first success.
    """
    ctx = ctx or StructureContext(A, t, limits=limits)
    cap = (ctx.E.frobenius_t + A.m) // A.a1 + (ctx.E_reflected.frobenius_t + A.m) // (
        A.m - A.a_ell
    )
    ctx._ensure(max(cap, 1))
    failures = tuple(h for h in range(1, cap + 1) if not ctx.structured(h))
    ht = failures[-1] + 1 if failures else 1
    return HtScan(A, t, ht, cap, failures)


def ht_exact(A: IntegerSet, t: int, *, limits: Limits = DEFAULT_LIMITS) -> int:
    return ht_scan(A, t, limits=limits).ht


def longest_run(values: list[int]) -> int:
    best = run = 0
    prev = None
    for v in values:
        run = run + 1 if prev is not None and v == prev + 1 else 1
        best = max(best, run)
        prev = v
    return best


def long_interval_check(A: IntegerSet, t: int, *, limits: Limits = DEFAULT_LIMITS) -> bool:
    """Does ``(hA)^(t)`` at ``h = bound_mt1`` contain m consecutive integers?"""
    h = bound_mt1(A, t, limits=limits)
    return longest_run(t_sumset(A, h, t, limits=limits)) >= A.m
