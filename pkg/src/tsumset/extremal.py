"""The family ``A = {0, 1, m-ell+1, ..., m}`` with ``t = C(ell+R, R)``, which
forces a large h_t."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from math import comb, factorial

from .core import DEFAULT_LIMITS, IntegerSet, InvalidInputError, Limits, ResourceLimitError
from .denumerant import rho_total
from .structure import StructureContext, ht_scan


@dataclass(frozen=True)
class ExtremalInstance:
    m: int
    ell: int
    R: int
    set: IntegerSet = field(init=False)
    t: int = field(init=False)
    g: int = field(init=False)

    def __post_init__(self) -> None:
        m, ell, R = self.m, self.ell, self.R
        if m < 5:
            raise InvalidInputError(f"need m >= 5, got m={m}")
        if not 2 <= ell or 2 * ell > m:
            raise InvalidInputError(f"need 2 <= ell <= m/2, got ell={ell}, m={m}")
        if R < 0 or R * (ell - 1) > m - ell:
            raise InvalidInputError(
                f"need 0 <= R <= (m-ell)/(ell-1), got R={R} with m={m}, ell={ell}"
            )
        els = (0, 1) + tuple(range(m - ell + 1, m + 1))
        object.__setattr__(self, "set", IntegerSet(els))
        object.__setattr__(self, "t", comb(ell + R, R))
        object.__setattr__(self, "g", (R + 1) * (m - ell + 1) - 1)

    @property
    def H(self) -> int:
        return 2 * self.R + 1


def build(m: int, ell: int, R: int) -> ExtremalInstance:
    return ExtremalInstance(m, ell, R)


@dataclass(frozen=True)
class ExtremalReport:
    instance: ExtremalInstance
    exceptional_in_range: bool
    rho_g: int
    frobenius_t: int
    frobenius_in_range: bool
    structured_at_H: bool
    ht: int
    mt1: int

    @property
    def passed(self) -> bool:
        return (
            self.exceptional_in_range
            and self.rho_g == self.instance.t
            and self.frobenius_in_range
            and not self.structured_at_H
            and self.ht >= self.instance.g
        )

    def to_dict(self) -> dict:
        inst = self.instance
        return {
            "m": inst.m,
            "ell": inst.ell,
            "R": inst.R,
            "set": str(inst.set),
            "t": str(inst.t),
            "g": inst.g,
            "H": inst.H,
            "checks": {
                "exceptional_sets_within_mR": self.exceptional_in_range,
                "rho_g_equals_t": self.rho_g == inst.t,
                "frobenius_bracket": self.frobenius_in_range,
                "unstructured_at_H": not self.structured_at_H,
                "ht_at_least_g": self.ht >= inst.g,
            },
            "rho_g": str(self.rho_g),
            "frobenius_t": self.frobenius_t,
            "ht_exact": self.ht,
            "mt1": self.mt1,
            "passed": self.passed,
        }


def verify(inst: ExtremalInstance, *, limits: Limits = DEFAULT_LIMITS) -> ExtremalReport:
    if inst.t > limits.max_t:
        raise ResourceLimitError(f"t = {inst.t} exceeds the cap {limits.max_t}")
    A, m, R = inst.set, inst.m, inst.R
    ctx = StructureContext(A, inst.t, limits=limits)
    top = m * R - 1
    within = all(n <= top for n in ctx.E.members) and all(
        n <= top for n in ctx.E_reflected.members
    )
    fr = ctx.E.frobenius_t
    scan = ht_scan(A, inst.t, ctx=ctx, limits=limits)
    return ExtremalReport(
        instance=inst,
        exceptional_in_range=within,
        rho_g=rho_total(A, inst.g, limits=limits),
        frobenius_t=fr,
        frobenius_in_range=inst.g - m <= fr <= m * (inst.g // m) - 1,
        structured_at_H=ctx.structured(inst.H),
        ht=scan.ht,
        mt1=scan.cap,
    )


def induced_parameters(m: int) -> tuple[int, int]:
    """``ell = floor(m^(1/2.01))`` and ``R = floor(sqrt(m))``."""
    ell = math.floor(m ** (1 / 2.01))
    # guard against float error at exact powers
    while (ell + 1) ** 2.01 <= m:
        ell += 1
    while ell > 0 and ell**2.01 > m:
        ell -= 1
    return ell, math.isqrt(m)


def asymptotic_report(m: int) -> dict:
    """Finite-m evidence for ``h_t ~ m ell t^(1/ell) / e`` along the extremal family."""
    if m < 5:
        raise InvalidInputError(f"need m >= 5, got m={m}")
    ell, R = induced_parameters(m)
    record: dict = {"m": m, "ell": ell, "R": R}
    try:
        inst = ExtremalInstance(m, ell, R)
    except InvalidInputError as exc:
        record["skipped"] = str(exc)
        return record
    t = inst.t
    root_t = math.exp(math.log(t) / ell)
    scale = m * ell * root_t / math.e
    record.update(
        {
            "t": str(t),
            "g": inst.g,
            "ratio": inst.g / scale,
            # (ell!)^(1/ell) t^(1/ell) - ell <= R  <=>  (R+ell)^ell >= ell! t
            "lower_R_bound_holds": (R + ell) ** ell >= factorial(ell) * t,
            # R <= ell t^(1/ell) - ell  <=>  (R+ell)^ell <= ell^ell t
            "upper_R_bound_holds": (R + ell) ** ell <= ell**ell * t,
        }
    )
    return record

