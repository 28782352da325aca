"""Representation counts, t-sumsets and structure in Z^d.

Counting uses dense numpy grids layered by the number of parts. For a
direction u with ``<u, a> > 0`` on every nonzero generator, every partial sum
of a representation of p lies in ``{x in cone : <u, x> <= <u, p>}``, so a grid
covering the bounding box of that region loses no representation.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np

from ..core import (
    DEFAULT_LIMITS,
    DomainError,
    InternalInconsistencyError,
    InvalidInputError,
    Limits,
    ResourceLimitError,
)
from ..denumerant import count_dtype
from .geometry import (
    Hull,
    Vector,
    dot,
    extremal_points,
    nullspace,
    primitive,
    rank,
    separating_normal,
    simplex_coordinates,
    sub,
)
from .span import LatticeBasis, lattice_span

ANGULAR_GRID = 720


def _ceil_frac(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def _floor_frac(x: Fraction) -> int:
    return x.numerator // x.denominator


@dataclass(frozen=True)
class LatticePointSet:
    """A finite ``A`` in Z^d containing the origin as a vertex of its hull."""

    points: tuple[Vector, ...]
    d: int = field(init=False)

    def __post_init__(self) -> None:
        pts = tuple(sorted(set(tuple(int(c) for c in p) for p in self.points)))
        if not pts:
            raise InvalidInputError("empty point set")
        d = len(pts[0])
        if d < 1 or any(len(p) != d for p in pts):
            raise InvalidInputError("points must all have the same positive dimension")
        origin = (0,) * d
        if origin not in pts:
            raise InvalidInputError("the origin must belong to the set")
        if len(pts) < 2:
            raise InvalidInputError("need at least one nonzero point")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "d", d)
        if origin not in self.vertices:
            raise InvalidInputError("the origin is not an extremal point of the hull")

    @classmethod
    def from_iterable(cls, points: Iterable[Sequence[int]]) -> "LatticePointSet":
        return cls(tuple(tuple(p) for p in points))

    @property
    def origin(self) -> Vector:
        return (0,) * self.d

    @property
    def nonzero(self) -> tuple[Vector, ...]:
        return tuple(p for p in self.points if any(p))

    @cached_property
    def hull(self) -> Hull:
        return Hull(self.points)

    @cached_property
    def vertices(self) -> tuple[Vector, ...]:
        return tuple(extremal_points(self.points))

    @cached_property
    def span(self) -> LatticeBasis:
        return lattice_span(self.points, self.d)

    @cached_property
    def direction(self) -> Vector:
        """Integer u with ``<u, a> > 0`` for every nonzero a (pointed-cone witness)."""
        u = separating_normal(self.hull, self.origin)
        if not all(dot(u, a) > 0 for a in self.nonzero):
            raise DomainError("the cone of the set is not pointed")
        return u

    @property
    def delta_u(self) -> int:
        return min(dot(self.direction, a) for a in self.nonzero)

    @property
    def Delta_u(self) -> int:
        return max(dot(self.direction, a) for a in self.nonzero)

    def translate_reflect(self, v: Sequence[int]) -> "LatticePointSet":
        """``v - A``; for a vertex v the origin is again a vertex."""
        return LatticePointSet(tuple(sub(v, a) for a in self.points))

    def full_dimensional(self) -> bool:
        return self.span.rank == self.d


def parse_points(lines: Iterable[str]) -> LatticePointSet:
    """One point per line, comma-separated integers; ``#`` starts a comment."""
    pts = []
    for line in lines:
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            pts.append(tuple(int(tok) for tok in "".join(line.split()).split(",")))
        except ValueError as exc:
            raise InvalidInputError(f"bad point {line!r}") from exc
    return LatticePointSet.from_iterable(pts)


def parse_point_literal(text: str) -> LatticePointSet:
    """``"0,0;1,0;0,1"`` style literal: points separated by ``;``."""
    return parse_points(text.split(";"))


class CountGrid:
    """Exact-j-parts representation counts over a box.

    ``layers[j][x - lo]`` counts representations of x using exactly j nonzero
    parts. Counts are exact for every x in the region ``cone ∩ {<u,x> <= U}``.
    """

    def __init__(
        self,
        A: LatticePointSet,
        U: int,
        max_parts: int | None = None,
        *,
        saturate: int | None = None,
        limits: Limits = DEFAULT_LIMITS,
    ):
        if U < 0:
            raise DomainError(f"region height must be nonnegative, got {U}")
        u = A.direction
        J = U // A.delta_u
        if max_parts is not None:
            J = min(J, max_parts)
        lo, hi = [], []
        for i in range(A.d):
            coords = [Fraction(0)] + [Fraction(U * a[i], dot(u, a)) for a in A.nonzero]
            lo.append(_floor_frac(min(coords)))
            hi.append(_ceil_frac(max(coords)))
        shape = tuple(b - a + 1 for a, b in zip(lo, hi))
        cells = (J + 1) * math.prod(shape)
        limits.check_cells(cells, f"count grid for {len(A.points)} points, U={U}")
        dtype = count_dtype(len(A.nonzero), J, saturate)
        layers = np.zeros((J + 1,) + shape, dtype=dtype)
        layers[(0,) + tuple(-x for x in lo)] = 1
        for a in A.nonzero:
            dst = tuple(slice(max(s, 0), n + min(s, 0)) for s, n in zip(a, shape))
            src = tuple(slice(max(-s, 0), n - max(s, 0)) for s, n in zip(a, shape))
            if any(sl.start >= sl.stop for sl in dst):
                continue
            for j in range(1, J + 1):
                layers[(j,) + dst] += layers[(j - 1,) + src]
                if saturate is not None:
                    np.minimum(layers[j], saturate, out=layers[j])
        self.A = A
        self.U = U
        self.max_parts = J
        self.lo = tuple(lo)
        self.hi = tuple(hi)
        self.saturate = saturate
        self.layers = layers

    def index(self, p: Sequence[int]) -> tuple[int, ...] | None:
        idx = tuple(x - a for x, a in zip(p, self.lo))
        if all(0 <= i < n for i, n in zip(idx, self.layers.shape[1:])):
            return idx
        return None

    @cached_property
    def cumulative(self) -> np.ndarray:
        C = np.cumsum(self.layers, axis=0)
        if self.saturate is not None:
            np.minimum(C, self.saturate, out=C)
        return C

    def at_most(self, h: int, p: Sequence[int]) -> int:
        idx = self.index(p)
        if idx is None or h < 0:
            return 0
        return int(self.cumulative[(min(h, self.max_parts),) + idx])

    def total(self, p: Sequence[int]) -> int:
        return self.at_most(self.max_parts, p)

    def region(self) -> dict:
        return {"height": self.U, "direction": list(self.A.direction), "box": [list(self.lo), list(self.hi)]}


def rho_h_d(
    A: LatticePointSet, h: int, p: Sequence[int], *, limits: Limits = DEFAULT_LIMITS
) -> int:
    """Number of ``(k_a)_{a != 0} >= 0`` with ``sum k_a a = p`` and ``sum k_a <= h``."""
    if h < 0:
        raise DomainError(f"h must be nonnegative, got {h}")
    U = dot(A.direction, p)
    if U < 0:
        return 0
    return CountGrid(A, U, h, limits=limits).at_most(h, p)


def stabilization_cap(A: LatticePointSet, p: Sequence[int]) -> int:
    """``ceil(<p, u> / delta_u)``: part budget beyond which rho_h(p) no longer grows."""
    return max(0, -(-dot(A.direction, p) // A.delta_u))


def rho_total_d(A: LatticePointSet, p: Sequence[int], *, limits: Limits = DEFAULT_LIMITS) -> int:
    if dot(A.direction, p) < 0 or not A.span.contains(p):
        return 0
    return rho_h_d(A, stabilization_cap(A, p), p, limits=limits)


@dataclass(frozen=True)
class DirectionStats:
    direction: Vector
    delta: float
    Delta: float
    ratio: Fraction
    projections: tuple[int, int]
    candidates: int
    grid_resolution: int | None

    def to_dict(self) -> dict:
        return {
            "direction": list(self.direction),
            "delta": self.delta,
            "Delta": self.Delta,
            "ratio": str(self.ratio),
            "integer_projections": list(self.projections),
            "candidates_examined": self.candidates,
            "angular_grid": self.grid_resolution,
            "note": "best ratio over the candidate family (upper bound on the optimum)",
        }


def _candidate_directions(A: LatticePointSet, grid: int) -> list[Vector]:
    d = A.d
    if d == 1:
        return [(1,), (-1,)]
    gens = set()
    for a in A.points:
        for b in A.points:
            w = sub(a, b)
            if any(w):
                gens.add(primitive(w))
    gens |= {primitive(a) for a in A.nonzero}
    out = {A.direction}
    for combo in itertools.combinations(sorted(gens), d - 1):
        if rank(list(combo), d) != d - 1:
            continue
        (n,) = nullspace(list(combo), d)
        out.add(n)
        out.add(tuple(-x for x in n))
    if d == 2 and grid:
        for k in range(grid):
            th = 2 * math.pi * k / grid
            v = (
                Fraction(math.cos(th)).limit_denominator(10**6),
                Fraction(math.sin(th)).limit_denominator(10**6),
            )
            out.add(primitive(v))
    return sorted(out)


def delta_Delta(A: LatticePointSet, *, grid: int = ANGULAR_GRID) -> DirectionStats:
    """Direction minimizing (largest / smallest nonzero projection) over a candidate family.

    Candidates are the normals of hyperplanes spanned by d-1 vectors from
    ``A ∪ (A - A)``, the stored validity direction, and for d = 2 an angular
    grid of ``grid`` rational directions.
    """
    cands = _candidate_directions(A, grid)
    best = None
    for u in cands:
        projs = [dot(u, a) for a in A.nonzero]
        if min(projs) <= 0:
            continue
        ratio = Fraction(max(projs), min(projs))
        key = (ratio, u)
        if best is None or key < best[0]:
            best = (key, min(projs), max(projs))
    if best is None:
        raise DomainError("no valid direction: the cone is not pointed")
    (ratio, u), lo, hi = best
    norm = math.sqrt(dot(u, u))
    return DirectionStats(u, lo / norm, hi / norm, ratio, (lo, hi), len(cands), grid if A.d == 2 else None)


class ZdStructure:
    """Shared grids for structure checks of ``(hA)^(t)`` for all ``h <= h_max``."""

    def __init__(self, A: LatticePointSet, t: int, h_max: int, *, limits: Limits = DEFAULT_LIMITS):
        if t < 1:
            raise DomainError(f"t must be positive, got {t}")
        if h_max < 0:
            raise DomainError(f"h_max must be nonnegative, got {h_max}")
        self.A = A
        self.t = t
        self.h_max = h_max
        self.limits = limits
        self.grid = CountGrid(A, h_max * A.Delta_u, h_max, saturate=t, limits=limits)
        self.reflected: dict[Vector, tuple[LatticePointSet, CountGrid]] = {}
        for v in A.vertices:
            B = A.translate_reflect(v)
            self.reflected[v] = (B, CountGrid(B, h_max * B.Delta_u, saturate=t, limits=limits))
        self._points: dict[int, list[Vector]] = {}

    def points(self, h: int) -> list[Vector]:
        """Lattice points of ``h H(A)`` in the span of A."""
        if h not in self._points:
            lo, hi = self.A.hull.bounding_box(h)
            box = math.prod(b - a + 1 for a, b in zip(lo, hi))
            if box > self.limits.max_points:
                raise ResourceLimitError(f"{box} candidate points exceed the cap {self.limits.max_points}")
            span = self.A.span
            self._points[h] = [p for p in self.A.hull.lattice_points(h) if span.contains(p)]
        return self._points[h]

    def _check(self, h: int) -> None:
        if not 0 <= h <= self.h_max:
            raise DomainError(f"h = {h} outside the prepared range [0, {self.h_max}]")

    def lhs(self, h: int) -> list[Vector]:
        self._check(h)
        return [p for p in self.points(h) if self.grid.at_most(h, p) >= self.t]

    def removed_by(self, h: int) -> dict[Vector, list[Vector]]:
        """For each vertex v, points p of h H(A) with ``h v - p`` in ``E_t(v - A)``."""
        self._check(h)
        out = {}
        for v, (_, g) in self.reflected.items():
            hv = tuple(h * x for x in v)
            out[v] = [p for p in self.points(h) if g.total(sub(hv, p)) < self.t]
        return out

    def rhs(self, h: int) -> list[Vector]:
        bad = set().union(*self.removed_by(h).values())
        return [p for p in self.points(h) if p not in bad]

    def structured(self, h: int) -> tuple[bool, list[Vector], list[Vector]]:
        lhs = self.lhs(h)
        rhs = self.rhs(h)
        if not set(lhs) <= set(rhs):
            raise InternalInconsistencyError(f"(hA)^(t) escapes the structured set at h={h}")
        witnesses = sorted(set(rhs) - set(lhs))
        return not witnesses, lhs, witnesses

    def truncation(self) -> dict:
        return {
            "lhs": self.grid.region(),
            "reflected": {",".join(map(str, v)): g.region() for v, (_, g) in self.reflected.items()},
        }


def t_sumset_d(A: LatticePointSet, h: int, t: int, *, limits: Limits = DEFAULT_LIMITS) -> list[Vector]:
    return ZdStructure(A, t, h, limits=limits).lhs(h)


def structured_rhs_d(A: LatticePointSet, h: int, t: int, *, limits: Limits = DEFAULT_LIMITS) -> list[Vector]:
    return ZdStructure(A, t, h, limits=limits).rhs(h)


def empirical_structure_index(
    A: LatticePointSet, t: int, h_cap: int, *, limits: Limits = DEFAULT_LIMITS
) -> dict:
    """Smallest h* with every h in ``[h*, h_cap]`` structured (empirical only)."""
    ctx = ZdStructure(A, t, h_cap, limits=limits)
    failing = [h for h in range(1, h_cap + 1) if not ctx.structured(h)[0]]
    if failing and failing[-1] == h_cap:
        h_star = None
    else:
        h_star = failing[-1] + 1 if failing else 1
    return {
        "t": t,
        "h_cap": h_cap,
        "h_star": h_star,
        "failing_h": failing,
        "label": f"empirical up to h_cap={h_cap}",
        "truncation": ctx.truncation(),
    }


def admissible_simplices(A: LatticePointSet) -> list[tuple[Vector, ...]]:
    """Subsets B of the vertices with 0 in B, |B| = d+1 and B spanning R^d."""
    others = [v for v in A.vertices if any(v)]
    out = []
    for combo in itertools.combinations(others, A.d):
        if rank(list(combo), A.d) == A.d:
            out.append((A.origin,) + combo)
    return out


def zd_bound_formula(A: LatticePointSet, t: int, phi: Mapping) -> int:
    """Max over admissible B of ``sum_b ceil(Delta_{b-A}/delta_{b-A} * phi_{b-A,t})``."""
    simplices = admissible_simplices(A)
    if not simplices:
        raise DomainError("no spanning vertex simplex: the set is not full-dimensional")
    weights = {}
    for v in A.vertices:
        key = v if v in phi else (v[0] if A.d == 1 and v[0] in phi else None)
        if key is None:
            raise InvalidInputError(f"missing phi value for vertex {v}")
        value = Fraction(phi[key])
        if value < 1:
            raise DomainError(f"phi must be at least 1, got {value} at {v}")
        ratio = delta_Delta(A.translate_reflect(v)).ratio
        weights[v] = _ceil_frac(ratio * value)
    return max(sum(weights[b] for b in B) for B in simplices)


def caratheodory_cover_check(
    A: LatticePointSet, lam, sample_cap: int = 5000, *, seed: int = 0
) -> bool:
    """Is every lattice point of ``lam H(A)`` in ``lam H(B)`` for an admissible B?"""
    lam = Fraction(lam)
    if lam < 1:
        raise DomainError(f"lambda must be at least 1, got {lam}")
    simplices = admissible_simplices(A)
    if not simplices:
        raise DomainError("no spanning vertex simplex: the set is not full-dimensional")
    pts = A.hull.lattice_points(lam)
    if len(pts) > sample_cap:
        import random

        pts = random.Random(seed).sample(pts, sample_cap)

    def covered(p: Vector) -> bool:
        for B in simplices:
            c = simplex_coordinates(B[1:], p)
            if c is not None and min(c) >= 0 and sum(c) <= lam:
                return True
        return False

    return all(covered(p) for p in pts)


def _finite_difference(values: list[int], order: int) -> list[int]:
    out = list(values)
    for _ in range(order):
        out = [b - a for a, b in zip(out, out[1:])]
    return out


def _interpolate(xs: list[int], ys: list[int]) -> list[Fraction]:
    """Coefficients (constant first) of the polynomial through the given points."""
    n = len(xs)
    coeffs = [Fraction(0)] * n
    for i in range(n):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j in range(n):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xs[j] * basis[k + 1]
            denom *= xs[i] - xs[j]
        for k in range(n):
            coeffs[k] += ys[i] * basis[k] / denom
    return coeffs


def hull_size_poly_check(
    A: LatticePointSet, t: int, h_range: Sequence[int], *, limits: Limits = DEFAULT_LIMITS
) -> dict:
    """Sizes ``s(h) = |h H(A) ∩ Lambda_A  minus  E_t(A)|`` and the tail where they are polynomial."""
    hs = sorted(set(int(h) for h in h_range))
    if not hs or hs[0] < 0:
        raise DomainError("h_range must be nonempty and nonnegative")
    if hs != list(range(hs[0], hs[-1] + 1)):
        raise DomainError("h_range must be a contiguous range")
    grid = CountGrid(A, hs[-1] * A.Delta_u, saturate=t, limits=limits)
    span = A.span
    sizes = []
    for h in hs:
        pts = [p for p in A.hull.lattice_points(h) if span.contains(p)]
        sizes.append(sum(1 for p in pts if grid.total(p) >= t))
    order = A.d + 1
    diffs = _finite_difference(sizes, order)
    tail = 0
    for x in reversed(diffs):
        if x != 0:
            break
        tail += 1
    record = {
        "h": hs,
        "sizes": sizes,
        "order": order,
        "tail_length": tail,
        "conclusive": tail > 0,
    }
    if tail:
        start = len(diffs) - tail
        xs = hs[start : start + order]
        ys = sizes[start : start + order]
        record["tail_start"] = hs[start]
        record["coefficients"] = [str(c) for c in _interpolate(xs, ys)]
    return record
