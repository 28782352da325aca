"""Integer span of a point set, kept in row Hermite normal form."""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Iterable, Sequence

Vector = tuple[int, ...]


def hermite_rows(vectors: Iterable[Sequence[int]], dim: int) -> tuple[list[list[int]], list[int]]:
    """Row-style HNF of the lattice generated by ``vectors``.

    Returns (rows, pivot columns): pivots strictly increase, pivot entries are
    positive, entries above a pivot are reduced into ``[0, pivot)`` and
    entries left of a pivot are zero.
    """
    pending = [list(v) for v in vectors if any(v)]
    basis: list[list[int]] = []
    pivots: list[int] = []
    for col in range(dim):
        live = [r for r in pending if r[col] != 0]
        if not live:
            continue
        rest = [r for r in pending if r[col] == 0]
        # Euclid on column `col` until a single row carries a nonzero entry
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[col]))
            head = live[0]
            nxt = [head]
            for r in live[1:]:
                q = r[col] // head[col]
                r = [a - q * b for a, b in zip(r, head)]
                (nxt if r[col] != 0 else rest).append(r)
            live = nxt
        piv = live[0]
        if piv[col] < 0:
            piv = [-a for a in piv]
        for row in basis:
            q = row[col] // piv[col]
            if q:
                row[:] = [a - q * b for a, b in zip(row, piv)]
        basis.append(piv)
        pivots.append(col)
        pending = [r for r in rest if any(r)]
    return basis, pivots


@dataclass(frozen=True)
class LatticeBasis:
    basis: tuple[Vector, ...]
    pivots: tuple[int, ...]
    dim: int

    @property
    def rank(self) -> int:
        return len(self.basis)

    def contains(self, v: Sequence[int]) -> bool:
        w = list(v)
        if len(w) != self.dim:
            raise ValueError(f"expected a {self.dim}-vector, got {tuple(v)}")
        for row, pc in zip(self.basis, self.pivots):
            if w[pc] % row[pc]:
                return False
            q = w[pc] // row[pc]
            if q:
                w = [a - q * b for a, b in zip(w, row)]
        return not any(w)

    def index(self) -> int | None:
        """``[Z^d : span]`` for a full-rank span, else None (infinite index)."""
        if self.rank < self.dim:
            return None
        return prod(row[pc] for row, pc in zip(self.basis, self.pivots))

    def to_dict(self) -> dict:
        return {
            "rank": self.rank,
            "basis": [list(r) for r in self.basis],
            "index": self.index(),
        }


def lattice_span(points: Iterable[Sequence[int]], dim: int | None = None) -> LatticeBasis:
    pts = [tuple(int(c) for c in p) for p in points]
    if dim is None:
        if not pts:
            raise ValueError("cannot infer dimension from an empty set")
        dim = len(pts[0])
    rows, pivots = hermite_rows(pts, dim)
    return LatticeBasis(tuple(tuple(r) for r in rows), tuple(pivots), dim)
