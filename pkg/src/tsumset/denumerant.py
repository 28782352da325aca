"""Exact representation functions in Z, simplex lattice-point counts and bounds.

All counts are exact. The layered tables below are computed with numpy; they
use ``int64`` only when an a-priori bound on every entry fits, and fall back
to ``object`` arrays of Python integers otherwise.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial, prod
from typing import Sequence

import numpy as np

from .core import (
    DEFAULT_LIMITS,
    DomainError,
    IntegerSet,
    InvalidInputError,
    Limits,
    ResourceLimitError,
)

_INT64_SAFE = 2**62


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def count_dtype(n_items: int, max_parts: int, saturate: int | None = None):
    """int64 when every cumulative count provably fits, else object."""
    if saturate is not None:
        return np.int64
    # tuples of n_items nonnegative ints with sum <= max_parts
    if comb(max_parts + n_items, n_items) < _INT64_SAFE:
        return np.int64
    return object


def parts_table(
    A: IntegerSet,
    max_parts: int,
    n_max: int | None = None,
    *,
    saturate: int | None = None,
    limits: Limits = DEFAULT_LIMITS,
) -> np.ndarray:
    """``T[j, n]`` = number of ways to write n with exactly j nonzero parts.

    Columns run over ``0..min(max_parts*m, n_max)``. With ``saturate=t`` every
    entry is replaced by ``min(entry, t)``, which keeps threshold tests exact.
    """
    width = max_parts * A.m if n_max is None else min(max_parts * A.m, n_max)
    width = max(width, 0) + 1
    limits.check_cells((max_parts + 1) * width, f"parts table for {A}")
    dtype = count_dtype(A.ell + 1, max_parts, saturate)
    T = np.zeros((max_parts + 1, width), dtype=dtype)
    T[0, 0] = 1
    for a in A.nonzero:
        if a >= width:
            continue
        for j in range(1, max_parts + 1):
            T[j, a:] += T[j - 1, : width - a]
            if saturate is not None:
                np.minimum(T[j], saturate, out=T[j])
    return T


def cumulative_parts(T: np.ndarray, saturate: int | None = None) -> np.ndarray:
    """Turn exact-j counts into at-most-h counts, i.e. ``rho_{A,h}`` rows."""
    C = np.cumsum(T, axis=0)
    if saturate is not None:
        np.minimum(C, saturate, out=C)
    return C


def rho_h(A: IntegerSet, h: int, n: int, *, limits: Limits = DEFAULT_LIMITS) -> int:
    """Number of ``(k_1..k_{ell+1}) >= 0`` with ``sum k_i a_i = n`` and ``sum k_i <= h``."""
    if h < 0:
        raise InvalidInputError(f"h must be nonnegative, got {h}")
    if n < 0 or n > h * A.m:
        return 0
    T = parts_table(A, h, n, limits=limits)
    return int(T[:, n].sum())


def rho_total(A: IntegerSet, n: int, *, limits: Limits = DEFAULT_LIMITS) -> int:
    """Total representation count, via the part budget ``ceil(n/a1)`` that already
    captures every representation."""
    if n < 0:
        return 0
    return rho_h(A, _ceil_div(n, A.a1), n, limits=limits)


def total_table(A: IntegerSet, n_max: int) -> list[int]:
    """``rho_A(n)`` for ``n = 0..n_max`` by the unbounded coin recurrence."""
    T = [0] * (n_max + 1)
    T[0] = 1
    for a in A.nonzero:
        for n in range(a, n_max + 1):
            T[n] += T[n - a]
    return T


@dataclass(frozen=True)
class RhoTable:
    set: IntegerSet
    h: int
    values: tuple[int, ...]

    def __getitem__(self, n: int) -> int:
        if 0 <= n < len(self.values):
            return self.values[n]
        return 0

    def __len__(self) -> int:
        return len(self.values)

    def support(self) -> list[int]:
        return [n for n, v in enumerate(self.values) if v]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "count"])
        for n, v in enumerate(self.values):
            w.writerow([n, v])
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps([str(v) for v in self.values])

    @classmethod
    def from_json(cls, A: IntegerSet, h: int, text: str) -> "RhoTable":
        return cls(A, h, tuple(int(s) for s in json.loads(text)))


def rho_batch(A: IntegerSet, h: int, *, limits: Limits = DEFAULT_LIMITS) -> RhoTable:
    if h < 0:
        raise InvalidInputError(f"h must be nonnegative, got {h}")
    if h * A.m > limits.max_hm:
        raise ResourceLimitError(f"h*m = {h * A.m} exceeds the cap {limits.max_hm}")
    T = parts_table(A, h, limits=limits)
    row = T.sum(axis=0)
    return RhoTable(A, h, tuple(int(v) for v in row))


def snn_count(A: IntegerSet, n: int) -> int:
    """Brute-force size of ``{mu in [0,a1)^ell : sum_{j>=2} a_j mu_j = n (mod a1)}``."""
    a1 = A.a1
    tail = A.elements[2:]
    target = n % a1
    return sum(
        1
        for mu in itertools.product(range(a1), repeat=len(tail))
        if sum(a * x for a, x in zip(tail, mu)) % a1 == target
    )


def snn_histogram(A: IntegerSet) -> list[int]:
    """Brute-force counts of the same tuples, bucketed by residue mod a1."""
    a1 = A.a1
    tail = A.elements[2:]
    hist = [0] * a1
    for mu in itertools.product(range(a1), repeat=len(tail)):
        hist[sum(a * x for a, x in zip(tail, mu)) % a1] += 1
    return hist


@dataclass(frozen=True)
class Simplex:
    """``{x in R_{>=0}^d : sum x_i N_i <= R}``."""

    weights: tuple[int, ...]
    budget: Fraction

    def __post_init__(self) -> None:
        w = tuple(int(x) for x in self.weights)
        if not w:
            raise InvalidInputError("simplex needs at least one weight")
        if any(x < 0 for x in w):
            raise InvalidInputError(f"weights must be nonnegative: {w}")
        b = Fraction(self.budget)
        if b < 0:
            raise InvalidInputError(f"budget must be nonnegative: {b}")
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "budget", b)

    @property
    def d(self) -> int:
        return len(self.weights)

    def _require_positive(self) -> None:
        if any(x == 0 for x in self.weights):
            raise InvalidInputError(f"zero weight gives an unbounded simplex: {self.weights}")


def simplex_count(S: Simplex) -> int:
    """Lattice points of the simplex, by direct enumeration."""
    S._require_positive()

    def rec(weights: Sequence[int], budget: Fraction) -> int:
        if not weights:
            return 1
        w, rest = weights[0], weights[1:]
        top = int(budget // w)
        if not rest:
            return top + 1
        return sum(rec(rest, budget - x * w) for x in range(top + 1))

    return rec(S.weights, S.budget)


def simplex_volume(S: Simplex) -> Fraction:
    """``R^d / (d! * N_1 ... N_d)``."""
    S._require_positive()
    return S.budget**S.d / (factorial(S.d) * prod(S.weights))


def simplex_upper_volume(S: Simplex) -> Fraction:
    """Volume of the simplex with budget enlarged by ``sum N_i``; bounds the count."""
    return simplex_volume(Simplex(S.weights, S.budget + sum(S.weights)))


def _bracket_threshold(A: IntegerSet) -> int:
    return (A.a1 - 1) * sum(A.elements[2:])


def _bracket_denominator(A: IntegerSet) -> int:
    return factorial(A.ell) * prod(A.nonzero)


def rho_brackets(A: IntegerSet, n: int) -> tuple[Fraction, Fraction]:
    """Lower and upper estimates for ``rho_A(n)`` once ``n >= (a1-1) * sum_{j>=2} a_j``.

    The upper value is the classical stated one; it is *not* a valid bound for
    every set (e.g. ``A = {0,3,5}``, ``n = 15`` gives 7/5 while the count is 2).
    Use :func:`rho_upper_sound` for a bound that always holds.
    """
    threshold = _bracket_threshold(A)
    if n < threshold:
        raise DomainError(f"n = {n} is below the threshold (a1-1)*sum a_j = {threshold}")
    s = sum(A.elements[2:])
    den = _bracket_denominator(A)
    return Fraction((n - threshold) ** A.ell, den), Fraction((n + 1 + s) ** A.ell, den)


def rho_upper_sound(A: IntegerSet, n: int) -> Fraction:
    """``(n + a1 * sum_{j>=2} a_j)^ell / (ell! a1 ... a_ell m)``, valid for all n >= 0."""
    if n < 0:
        raise DomainError(f"n must be nonnegative, got {n}")
    s = sum(A.elements[2:])
    return Fraction((n + A.a1 * s) ** A.ell, _bracket_denominator(A))


def growth_shift(A: IntegerSet) -> int:
    """Shift ``P = a1 * sum_{j>=2} a_j + 1`` of the growth estimate."""
    return A.a1 * sum(A.elements[2:]) + 1


def growth_check(A: IntegerSet, n: int, k: int) -> bool:
    """Check ``rho_A(N) >= (1 + k*ell / (n + 1 + P/a1)) * rho_A(n)`` for all ``N >= n+P+k``.

    Since ``rho_A(N + m) >= rho_A(N)``, the minimum over all such N is attained
    among the first m of them, so checking that window is exhaustive.
    """
    base = A.a1 * sum(A.elements[2:])
    if n < base:
        raise DomainError(f"n = {n} is below a1*sum a_j = {base}")
    if k < 0:
        raise DomainError(f"k must be nonnegative, got {k}")
    P = base + 1
    start = n + P + k
    table = total_table(A, start + A.m - 1)
    factor = 1 + Fraction(k * A.ell) / (n + 1 + Fraction(P, A.a1))
    need = factor * table[n]
    return min(table[start : start + A.m]) >= need
