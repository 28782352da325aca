"""Exact convex-hull geometry for small integer point sets.

Everything is done over ``Fraction``: facets are found by brute force over
affinely independent subsets, which is fine for the handful of points and
the small dimensions this package targets.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence

Vector = tuple[int, ...]


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def sub(u: Sequence[int], v: Sequence[int]) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def primitive(v: Sequence) -> Vector:
    """Scale a rational vector to the primitive integer vector with the same direction."""
    fr = [Fraction(x) for x in v]
    den = reduce(lcm, (x.denominator for x in fr), 1)
    ints = [int(x * den) for x in fr]
    g = reduce(gcd, (abs(x) for x in ints), 0)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def row_reduce(rows: Sequence[Sequence], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns the nonzero rows and the pivot columns."""
    M = [[Fraction(x) for x in r] for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rank(rows: Sequence[Sequence], ncols: int) -> int:
    return len(row_reduce(rows, ncols)[1]) if rows else 0


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[Vector]:
    """Primitive integer basis of ``{x : row . x = 0 for every row}``."""
    if not rows:
        return [tuple(int(i == j) for j in range(ncols)) for i in range(ncols)]
    R, pivots = row_reduce(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, pc in zip(R, pivots):
            x[pc] = -row[f]
        basis.append(primitive(x))
    return basis


def solve(M: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """Solve the square system ``M x = b``; None if M is singular."""
    n = len(M)
    aug = [list(M[i]) + [b[i]] for i in range(n)]
    R, pivots = row_reduce(aug, n + 1)
    if pivots != list(range(n)):
        return None
    return [R[i][n] for i in range(n)]


@dataclass(frozen=True)
class Hull:
    """H-representation of ``conv(points)``.

    ``x`` lies in ``scale * conv(points)`` iff ``<e, x> = scale * c`` for every
    equality and ``<n, x> <= scale * c`` for every facet.
    """

    points: tuple[Vector, ...]
    dim: int = field(init=False)
    affine_rank: int = field(init=False)
    equalities: tuple[tuple[Vector, int], ...] = field(init=False)
    facets: tuple[tuple[Vector, int], ...] = field(init=False)

    def __post_init__(self) -> None:
        pts = tuple(sorted(set(tuple(int(c) for c in p) for p in self.points)))
        if not pts:
            raise ValueError("hull of an empty set")
        d = len(pts[0])
        if any(len(p) != d for p in pts):
            raise ValueError("points of mixed dimension")
        p0 = pts[0]
        diffs = [sub(p, p0) for p in pts[1:]]
        r = rank(diffs, d)
        eqs = tuple((e, dot(e, p0)) for e in nullspace(diffs, d))
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "dim", d)
        object.__setattr__(self, "affine_rank", r)
        object.__setattr__(self, "equalities", eqs)
        object.__setattr__(self, "facets", self._find_facets(pts, r, [e for e, _ in eqs]))

    @staticmethod
    def _find_facets(pts, r: int, eq_normals: list[Vector]) -> tuple[tuple[Vector, int], ...]:
        if r == 0:
            return ()
        d = len(pts[0])
        found: set[tuple[Vector, int]] = set()
        for combo in itertools.combinations(pts, r):
            rows = [sub(q, combo[0]) for q in combo[1:]] + eq_normals
            ns = nullspace(rows, d)
            if len(ns) != 1:
                continue  # the chosen points are affinely dependent
            n = ns[0]
            c = dot(n, combo[0])
            vals = [dot(n, p) for p in pts]
            if all(v <= c for v in vals):
                found.add((n, c))
            elif all(v >= c for v in vals):
                found.add((tuple(-x for x in n), -c))
        return tuple(sorted(found))

    def contains(self, x: Sequence, scale=1) -> bool:
        for e, c in self.equalities:
            if dot(e, x) != scale * c:
                return False
        return all(dot(n, x) <= scale * c for n, c in self.facets)

    def tight_facets(self, x: Sequence, scale=1) -> list[Vector]:
        return [n for n, c in self.facets if dot(n, x) == scale * c]

    def is_vertex_by_facets(self, v: Sequence) -> bool:
        """Vertex test via the rank of the facets tight at v (independent of LP)."""
        if not self.contains(v):
            return False
        tight = self.tight_facets(v) + [e for e, _ in self.equalities]
        return rank(tight, self.dim) == self.dim

    def bounding_box(self, scale=1) -> tuple[Vector, Vector]:
        lo = tuple(min(p[i] for p in self.points) for i in range(self.dim))
        hi = tuple(max(p[i] for p in self.points) for i in range(self.dim))
        s = Fraction(scale)
        return (
            tuple(_floor(s * x) for x in lo),
            tuple(_ceil(s * x) for x in hi),
        )

    def lattice_points(self, scale=1) -> list[Vector]:
        """All integer points of ``scale * conv(points)``, sorted."""
        lo, hi = self.bounding_box(scale)
        return [
            x
            for x in itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi)))
            if self.contains(x, scale)
        ]


def _floor(x: Fraction) -> int:
    return x.numerator // x.denominator


def _ceil(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def in_hull(points: Iterable[Sequence[int]], x: Sequence[int]) -> bool:
    return Hull(tuple(tuple(p) for p in points)).contains(x)


def extremal_points(points: Iterable[Sequence[int]]) -> list[Vector]:
    """Points of the set that are not in the convex hull of the others."""
    pts = sorted(set(tuple(int(c) for c in p) for p in points))
    if len(pts) == 1:
        return pts
    return [v for v in pts if not Hull(tuple(p for p in pts if p != v)).contains(v)]


def separating_normal(hull: Hull, v: Sequence[int]) -> Vector:
    """Integer n, inside the hull's direction space, with ``<n, x> > <n, v>`` for
    every other point x of the hull. v must be a vertex."""
    tight = hull.tight_facets(v)
    if hull.affine_rank == 0:
        return tuple(0 for _ in range(hull.dim))
    n = tuple(-sum(col) for col in zip(*tight))
    return primitive(n)


def simplex_coordinates(basis: Sequence[Vector], p: Sequence[int]) -> list[Fraction] | None:
    """Coefficients c with ``p = sum c_i b_i`` for a square basis given as rows."""
    d = len(p)
    M = [[basis[j][i] for j in range(len(basis))] for i in range(d)]
    return solve(M, list(p))
