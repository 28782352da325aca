"""Canonical integer sets, normalization, reflection and shared limits."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import reduce
from math import gcd
from typing import Iterable, Iterator


class TsumsetError(Exception):
    """Base class for all errors raised by this package."""

    exit_code = 1


class InvalidInputError(TsumsetError, ValueError):
    exit_code = 2


class DomainError(InvalidInputError):
    """A mathematical precondition of an operation does not hold."""


class ResourceLimitError(TsumsetError):
    exit_code = 3


class InternalInconsistencyError(TsumsetError):
    """A computed result contradicts a proven bound: a bug, not bad input."""

    exit_code = 1


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError as exc:
        raise InvalidInputError(f"{name} must be an integer, got {raw!r}") from exc
    if value <= 0:
        raise InvalidInputError(f"{name} must be positive, got {value}")
    return value


@dataclass(frozen=True)
class Limits:
    """Resource caps shared by the counting routines.

    Defaults can be overridden with the environment variables
    ``TSUMSET_MAX_HM``, ``TSUMSET_MAX_T``, ``TSUMSET_MAX_CELLS`` and
    ``TSUMSET_MAX_POINTS`` (see :meth:`from_env`).
    """

    max_hm: int = 10_000_000
    max_t: int = 1_000_000
    max_cells: int = 50_000_000  # entries in a dense counting table
    max_points: int = 2_000_000  # lattice points enumerated in Z^d

    @classmethod
    def from_env(cls) -> "Limits":
        base = cls()
        return cls(
            max_hm=_env_int("TSUMSET_MAX_HM", base.max_hm),
            max_t=_env_int("TSUMSET_MAX_T", base.max_t),
            max_cells=_env_int("TSUMSET_MAX_CELLS", base.max_cells),
            max_points=_env_int("TSUMSET_MAX_POINTS", base.max_points),
        )

    def check_cells(self, cells: int, what: str) -> None:
        if cells > self.max_cells:
            raise ResourceLimitError(
                f"{what} needs {cells} table cells, above the cap {self.max_cells}"
            )


DEFAULT_LIMITS = Limits()


@dataclass(frozen=True)
class AffineRecord:
    """How a raw input maps onto its normalized set: ``raw = shift + scale * a``."""

    shift: int
    scale: int

    def apply(self, values: Iterable[int]) -> list[int]:
        return [self.shift + self.scale * v for v in values]


@dataclass(frozen=True)
class IntegerSet:
    """A finite set ``{0 = a_0 < a_1 < ... < a_ell < a_{ell+1} = m}`` with gcd 1."""

    elements: tuple[int, ...]
    m: int = field(init=False)
    ell: int = field(init=False)
    a1: int = field(init=False)
    a_ell: int = field(init=False)

    def __post_init__(self) -> None:
        els = tuple(int(x) for x in self.elements)
        if len(els) < 2:
            raise InvalidInputError(f"need at least 2 elements, got {list(els)}")
        if els[0] != 0:
            raise InvalidInputError(f"least element must be 0, got {els[0]}")
        if any(b <= a for a, b in zip(els, els[1:])):
            raise InvalidInputError(f"elements must be strictly increasing: {list(els)}")
        if reduce(gcd, els) != 1:
            raise InvalidInputError(f"gcd of {list(els)} is not 1")
        object.__setattr__(self, "elements", els)
        object.__setattr__(self, "m", els[-1])
        object.__setattr__(self, "ell", len(els) - 2)
        object.__setattr__(self, "a1", els[1])
        object.__setattr__(self, "a_ell", els[-2])

    @classmethod
    def of(cls, *values: int) -> "IntegerSet":
        return cls(tuple(values))

    @property
    def nonzero(self) -> tuple[int, ...]:
        return self.elements[1:]

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x: object) -> bool:
        return x in self.elements

    def __str__(self) -> str:
        return format_set(self.elements)


def normalize(raw: Iterable[int]) -> tuple[IntegerSet, AffineRecord]:
    """Translate to minimum 0 and divide by the gcd of the differences."""
    values = sorted({int(x) for x in raw})
    if len(values) < 2:
        raise InvalidInputError(f"need at least 2 distinct values, got {values}")
    shift = values[0]
    diffs = [v - shift for v in values]
    scale = reduce(gcd, diffs)
    return IntegerSet(tuple(d // scale for d in diffs)), AffineRecord(shift, scale)


def reflect(A: IntegerSet) -> IntegerSet:
    """Return ``m - A``."""
    return IntegerSet(tuple(sorted(A.m - a for a in A.elements)))


def format_set(values: Iterable[int]) -> str:
    return ",".join(str(v) for v in values)


def parse_ints(text: str) -> list[int]:
    """Parse ``"0, 3,5"`` into ``[0, 3, 5]``; whitespace is ignored."""
    cleaned = "".join(text.split())
    if not cleaned:
        raise InvalidInputError("empty set literal")
    try:
        return [int(tok) for tok in cleaned.split(",")]
    except ValueError as exc:
        raise InvalidInputError(f"bad integer list {text!r}") from exc


def parse_set(text: str) -> IntegerSet:
    """Parse a set literal and normalize it. Raw (unnormalized) input is accepted."""
    A, _ = normalize(parse_ints(text))
    return A


def read_sets(lines: Iterable[str]) -> list[IntegerSet]:
    """One set literal per line; blank lines and ``#`` comments are skipped."""
    out = []
    for line in lines:
        line = line.split("#", 1)[0].strip()
        if line:
            out.append(parse_set(line))
    return out
