import itertools
from fractions import Fraction

import pytest

import oracles
from tsumset.core import DomainError, IntegerSet, InvalidInputError, Limits, ResourceLimitError
from tsumset.frobenius import frobenius_t
from tsumset.lattice import (
    CountGrid,
    Hull,
    LatticePointSet,
    ZdStructure,
    caratheodory_cover_check,
    delta_Delta,
    empirical_structure_index,
    extremal_points,
    hull_size_poly_check,
    lattice_span,
    parse_point_literal,
    parse_points,
    rho_h_d,
    rho_total_d,
    stabilization_cap,
    structured_rhs_d,
    t_sumset_d,
    zd_bound_formula,
)
from tsumset.lattice.geometry import nullspace, primitive, rank, separating_normal
from tsumset.lattice.span import hermite_rows
from tsumset.structure import bound_mt1, h_plus_minus, ht_scan, structured_rhs, t_sumset

TRIANGLE = [(0, 0), (1, 0), (0, 1)]
DIAMOND = [(0, 0), (2, 0), (0, 2), (1, 1)]
PENTAGON = [(0, 0), (2, 0), (3, 2), (1, 3), (-1, 2)]
# a planar set whose t-sumsets are unstructured for small h
NOTCHED = [(0, 0), (1, 0), (4, 0), (5, 0), (0, 1), (1, 1)]


def lp(points):
    return LatticePointSet.from_iterable(points)


def line(els):
    return lp([(x,) for x in els])


# ---- geometry ---------------------------------------------------------------


def test_extremal_points_examples():
    assert extremal_points(DIAMOND) == [(0, 0), (0, 2), (2, 0)]
    assert extremal_points([(0,), (3,), (5,)]) == [(0,), (5,)]
    assert extremal_points(TRIANGLE) == sorted(TRIANGLE)


def test_extremal_points_agree_with_planar_hull():
    pts_pool = list(itertools.product(range(-2, 3), repeat=2))
    import random

    rng = random.Random(7)
    for _ in range(60):
        pts = rng.sample(pts_pool, rng.randint(3, 8))
        if rank([tuple(a - b for a, b in zip(p, pts[0])) for p in pts[1:]], 2) < 2:
            continue
        assert extremal_points(pts) == sorted(oracles.hull2d(pts))


def test_vertex_tests_agree():
    for pts in (DIAMOND, PENTAGON, [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)]):
        H = Hull(tuple(pts))
        verts = set(extremal_points(pts))
        for p in pts:
            assert H.is_vertex_by_facets(p) == (p in verts)


def test_hull_lower_dimensional():
    H = Hull(((0, 0), (2, 2), (1, 1)))
    assert H.affine_rank == 1
    assert H.contains((1, 1)) and not H.contains((1, 0)) and not H.contains((3, 3))
    assert H.lattice_points(2) == [(0, 0), (1, 1), (2, 2), (3, 3), (4, 4)]


def test_nullspace_and_primitive():
    assert primitive([Fraction(1, 2), Fraction(-3, 4)]) == (2, -3)
    (n,) = nullspace([(1, 2, 3), (0, 1, 1)], 3)
    assert sum(a * b for a, b in zip(n, (1, 2, 3))) == 0
    assert sum(a * b for a, b in zip(n, (0, 1, 1))) == 0


def test_separating_normal():
    H = Hull(tuple(PENTAGON))
    for v in extremal_points(PENTAGON):
        n = separating_normal(H, v)
        vals = [sum(a * b for a, b in zip(n, x)) for x in PENTAGON if x != v]
        assert min(vals) > sum(a * b for a, b in zip(n, v))


# ---- spans ------------------------------------------------------------------


def test_span_examples():
    assert lp(DIAMOND).span.index() == 2
    assert lp(TRIANGLE).span.index() == 1
    assert line((0, 3, 5)).span.index() == 1
    assert lattice_span([(0, 0), (2, 4)]).index() is None


def test_span_membership_matches_enumeration():
    for pts in (DIAMOND, [(0, 0), (3, 0), (1, 2)], [(0, 0), (4, 6), (6, 4)]):
        span = lattice_span(pts)
        for p in itertools.product(range(-4, 5), repeat=2):
            assert span.contains(p) == oracles.span_contains(pts, p, 8), (pts, p)


def test_hermite_canonical():
    a, _ = hermite_rows([(2, 0), (1, 1)], 2)
    b, _ = hermite_rows([(1, 1), (0, 2), (3, 1)], 2)
    assert a == b == [[1, 1], [0, 2]]


# ---- point sets -------------------------------------------------------------


def test_point_set_validation():
    with pytest.raises(InvalidInputError, match="origin"):
        lp([(1, 0), (0, 1)])
    with pytest.raises(InvalidInputError, match="extremal"):
        lp([(0, 0), (1, 0), (-1, 0)])
    with pytest.raises(InvalidInputError):
        lp([(0, 0), (1, 0, 0)])


def test_parse_points():
    A = parse_points(["# triangle", "0,0", " 1, 0", "0,1  # apex", ""])
    assert A.points == tuple(sorted(TRIANGLE))
    assert parse_point_literal("0,0;2,0;0,2;1,1").points == lp(DIAMOND).points
    with pytest.raises(InvalidInputError):
        parse_points(["0,x"])


def test_direction_is_valid():
    for pts in (TRIANGLE, DIAMOND, PENTAGON, NOTCHED):
        A = lp(pts)
        assert all(sum(a * b for a, b in zip(A.direction, p)) > 0 for p in A.nonzero)


# ---- counting ---------------------------------------------------------------


def test_rho_examples():
    assert rho_h_d(lp(TRIANGLE), 2, (1, 1)) == 1
    assert rho_h_d(lp(DIAMOND), 2, (2, 2)) == 2
    assert rho_h_d(lp(PENTAGON), 7, (0, 0)) == 1
    assert rho_total_d(lp(TRIANGLE), (2, 1)) == 1
    assert rho_total_d(lp(TRIANGLE), (-1, 0)) == 0
    assert rho_total_d(lp(DIAMOND), (2, 2)) == 2
    assert rho_total_d(lp(DIAMOND), (1, 0)) == 0


def test_rho_matches_enumeration():
    for pts in (DIAMOND, PENTAGON, NOTCHED):
        A = lp(pts)
        for h in range(0, 4):
            for p in itertools.product(range(-3, 9), repeat=2):
                assert rho_h_d(A, h, p) == oracles.rho_h_points(pts, h, p), (pts, h, p)


def test_grid_matches_enumeration_everywhere_in_region():
    A = lp(PENTAGON)
    grid = CountGrid(A, 12)
    u = A.direction
    for p in itertools.product(range(grid.lo[0], grid.hi[0] + 1), range(grid.lo[1], grid.hi[1] + 1)):
        if sum(a * b for a, b in zip(u, p)) <= 12:
            assert grid.total(p) == oracles.rho_total_points(PENTAGON, p)


def test_stabilization_in_h():
    A = lp(NOTCHED)
    for p in [(5, 2), (9, 1), (3, 3), (10, 0)]:
        cap = stabilization_cap(A, p)
        values = [rho_h_d(A, h, p) for h in range(cap, cap + 4)]
        assert len(set(values)) == 1
        assert values[0] == rho_total_d(A, p)


def test_rho_negative_h_rejected():
    with pytest.raises(DomainError):
        rho_h_d(lp(TRIANGLE), -1, (0, 0))


def test_cell_cap():
    with pytest.raises(ResourceLimitError):
        rho_h_d(lp(TRIANGLE), 50, (50, 50), limits=Limits(max_cells=1000))


# ---- delta / Delta ----------------------------------------------------------


def test_delta_examples():
    s = delta_Delta(line((0, 3, 5)))
    assert (s.delta, s.Delta) == (3.0, 5.0)
    s = delta_Delta(lp(TRIANGLE))
    assert s.ratio == 1 and s.direction == (1, 1)
    assert delta_Delta(lp([(0, 0), (1, 0)])).ratio == 1
    assert s.to_dict()["angular_grid"] == 720


def test_delta_ratio_not_beaten_by_random_directions():
    import random

    rng = random.Random(3)
    A = lp(PENTAGON)
    best = delta_Delta(A).ratio
    for _ in range(2000):
        u = (rng.randint(-50, 50), rng.randint(-50, 50))
        proj = [u[0] * p[0] + u[1] * p[1] for p in A.nonzero]
        if min(proj) > 0:
            assert Fraction(max(proj), min(proj)) >= best


# ---- structure in Z^d -------------------------------------------------------


def test_sumset_examples():
    A = lp(TRIANGLE)
    lhs = t_sumset_d(A, 3, 1)
    assert len(lhs) == 10 and lhs == structured_rhs_d(A, 3, 1)
    assert t_sumset_d(A, 0, 1) == [(0, 0)] == structured_rhs_d(A, 0, 1)
    assert t_sumset_d(lp(DIAMOND), 4, 1) == structured_rhs_d(lp(DIAMOND), 4, 1)


@pytest.mark.parametrize(
    "pts,lattice,cases",
    [
        (DIAMOND, lambda p: (p[0] + p[1]) % 2 == 0, [(1, 1), (1, 3), (2, 2), (3, 3), (3, 2)]),
        (TRIANGLE, lambda p: True, [(1, 2), (2, 3), (3, 4)]),
        (NOTCHED, lambda p: True, [(1, 1), (1, 2), (1, 3), (2, 2), (2, 3), (3, 2)]),
    ],
)
def test_structure_matches_oracle(pts, lattice, cases):
    A = lp(pts)
    for t, h in cases:
        lhs, rhs = oracles.structure_2d(pts, h, t, lattice)
        ctx = ZdStructure(A, t, h)
        assert ctx.lhs(h) == lhs
        assert ctx.rhs(h) == rhs


def test_notched_set_has_failures():
    r = empirical_structure_index(lp(NOTCHED), 2, 10)
    # frozen from the enumeration in test_structure_matches_oracle
    assert r["failing_h"] == [2, 3]
    assert r["h_star"] == 4
    assert "empirical up to h_cap=10" == r["label"]
    assert r["truncation"]["lhs"]["height"] > 0


def test_index_examples():
    assert empirical_structure_index(lp(TRIANGLE), 1, 12)["h_star"] == 1
    assert empirical_structure_index(lp(DIAMOND), 1, 15)["h_star"] is not None
    assert empirical_structure_index(lp(TRIANGLE), 3, 15)["h_star"] is not None


def test_index_absent_when_last_h_fails():
    r = empirical_structure_index(lp(NOTCHED), 3, 6)
    assert r["failing_h"][-1] == 6 and r["h_star"] is None


def test_structure_lhs_within_rhs():
    for pts in (PENTAGON, NOTCHED):
        ctx = ZdStructure(lp(pts), 2, 6)
        for h in range(7):
            assert set(ctx.lhs(h)) <= set(ctx.rhs(h))


def test_structure_point_cap():
    with pytest.raises(ResourceLimitError):
        ZdStructure(lp(TRIANGLE), 1, 30, limits=Limits(max_points=100)).lhs(30)


# ---- d = 1 reduction --------------------------------------------------------


@pytest.mark.parametrize("els,t", [((0, 3, 5), 1), ((0, 3, 5), 2), ((0, 1, 6, 7), 6), ((0, 2, 5, 6), 2)])
def test_d1_matches_integer_module(els, t):
    A, B = line(els), IntegerSet(els)
    cap = bound_mt1(B, t)
    ctx = ZdStructure(A, t, cap)
    for h in range(0, cap + 1):
        assert [p[0] for p in ctx.lhs(h)] == t_sumset(B, h, t)
        assert [p[0] for p in ctx.rhs(h)] == structured_rhs(B, h, t)
    assert empirical_structure_index(A, t, cap)["failing_h"] == list(ht_scan(B, t).failures)
    for n in range(0, 3 * B.m):
        assert rho_h_d(A, 3, (n,)) == oracles.rho_h(els, 3, n)


def test_d1_bound_reproduces_ceiling_version():
    B = IntegerSet.of(0, 3, 5)
    for t in (1, 2, 3, 4):
        phi = {(0,): Fraction(frobenius_t(B, t) + 5, 5), (5,): Fraction(frobenius_t(IntegerSet.of(0, 2, 5), t) + 5, 5)}
        assert zd_bound_formula(line((0, 3, 5)), t, phi) == sum(h_plus_minus(B, t))


def test_floor_ceiling_discrepancy_is_at_most_two():
    for els in [(0, 3, 5), (0, 2, 5, 6), (0, 1, 6, 7), (0, 4, 7, 9)]:
        B = IntegerSet(els)
        for t in (1, 2, 3):
            gap = sum(h_plus_minus(B, t)) - bound_mt1(B, t)
            assert 0 <= gap <= 2


# ---- bound formula, cover, polynomial growth ---------------------------------


def test_bound_examples():
    A = lp(TRIANGLE)
    assert zd_bound_formula(A, 1, {v: 1 for v in A.vertices}) == 3
    with pytest.raises(InvalidInputError):
        zd_bound_formula(A, 1, {(0, 0): 1})
    with pytest.raises(DomainError):
        zd_bound_formula(A, 1, {v: Fraction(1, 2) for v in A.vertices})
    with pytest.raises(DomainError):
        zd_bound_formula(lp([(0, 0), (1, 1), (2, 2)]), 1, {(0, 0): 1, (2, 2): 1})


def test_cover_examples():
    assert caratheodory_cover_check(lp(TRIANGLE), 2)
    assert caratheodory_cover_check(lp(DIAMOND), 3)
    assert caratheodory_cover_check(lp(PENTAGON), 2)
    assert caratheodory_cover_check(lp(PENTAGON), Fraction(7, 2), sample_cap=50)
    with pytest.raises(DomainError):
        caratheodory_cover_check(lp(TRIANGLE), Fraction(1, 2))


def test_poly_examples():
    r = hull_size_poly_check(lp(TRIANGLE), 1, range(0, 10))
    assert r["sizes"] == [(h + 1) * (h + 2) // 2 for h in range(10)]
    assert r["tail_start"] == 0 and r["coefficients"] == ["1", "3/2", "1/2"]
    r = hull_size_poly_check(line((0, 3, 5)), 1, range(0, 12))
    assert r["conclusive"] and r["coefficients"] == ["-3", "5"]
    r = hull_size_poly_check(lp(TRIANGLE), 1, range(0, 3))
    assert r["conclusive"] is False and "coefficients" not in r
    with pytest.raises(DomainError):
        hull_size_poly_check(lp(TRIANGLE), 1, [1, 3])
