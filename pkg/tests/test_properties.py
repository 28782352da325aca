import math
from fractions import Fraction

from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

import oracles
from tsumset import IntegerSet, normalize, reflect
from tsumset.denumerant import (
    Simplex,
    rho_brackets,
    rho_h,
    rho_total,
    rho_upper_sound,
    simplex_count,
    simplex_upper_volume,
    simplex_volume,
    snn_count,
)
from tsumset.extremal import build
from tsumset.frobenius import exceptional_set, frobenius_brackets, frobenius_t, scan_cap
from tsumset.lattice import LatticePointSet, ZdStructure, lattice_span, rho_h_d, stabilization_cap
from tsumset.structure import StructureContext, structured_rhs, t_sumset
from tsumset.threeset import ThreeSet, rho_closed

SETTINGS = settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@st.composite
def int_sets(draw, max_m=15, min_len=2, max_len=5):
    m = draw(st.integers(2, max_m))
    inner = draw(st.lists(st.integers(1, m - 1), max_size=max_len - 2, unique=True))
    els = sorted({0, m, *inner})
    assume(len(els) >= min_len and math.gcd(*els) == 1)
    return IntegerSet(tuple(els))


@st.composite
def three_sets(draw, max_m=30):
    m = draw(st.integers(3, max_m))
    a = draw(st.integers(2, m - 1))
    assume(math.gcd(a, m) == 1)
    return ThreeSet(a, m)


# ---- core -------------------------------------------------------------------


@SETTINGS
@given(st.lists(st.integers(-50, 50), min_size=2, max_size=6, unique=True))
def test_normalize_idempotent(raw):
    A, rec = normalize(raw)
    B, rec2 = normalize(A.elements)
    assert B == A and (rec2.shift, rec2.scale) == (0, 1)
    assert sorted(rec.apply(A.elements)) == sorted(raw)


@SETTINGS
@given(int_sets())
def test_reflect_is_an_involution(A):
    R = reflect(A)
    assert reflect(R) == A
    assert (R.m, R.ell) == (A.m, A.ell)
    assert (R.a1, R.m - R.a_ell) == (A.m - A.a_ell, A.a1)


# ---- representation counts ----------------------------------------------------


@SETTINGS
@given(int_sets(), st.integers(0, 6), st.integers(0, 60))
def test_shift_monotonicity(A, h, n):
    base = rho_h(A, h, n)
    for a in A:
        assert base <= rho_h(A, h + 1, n + a)


@SETTINGS
@given(int_sets(), st.integers(0, 80))
def test_stabilization(A, n):
    h0 = -(-n // A.a1)
    total = rho_total(A, n)
    assert total == oracles.rho_total(A.elements, n)
    for h in (h0, h0 + 1, h0 + 5):
        assert rho_h(A, h, n) == total


@SETTINGS
@given(int_sets(max_m=10), st.integers(0, 5))
def test_reflection_duality(A, h):
    R = reflect(A)
    for n in range(h * A.m + 1):
        assert rho_h(A, h, n) == rho_h(R, h, h * A.m - n)


@SETTINGS
@given(int_sets(max_m=12, min_len=3, max_len=5), st.integers(0, 40))
def test_snn_count_constant(A, n):
    assert snn_count(A, n) == A.a1 ** (A.ell - 1)


@SETTINGS
@given(int_sets(max_m=12, min_len=3, max_len=4), st.integers(0, 200))
def test_lower_and_corrected_upper_brackets(A, extra):
    n = (A.a1 - 1) * sum(A.elements[2:]) + extra
    lo, _ = rho_brackets(A, n)
    assert lo <= rho_total(A, n) <= rho_upper_sound(A, n)


@SETTINGS
@given(
    st.lists(st.integers(1, 9), min_size=1, max_size=3),
    st.fractions(min_value=0, max_value=60, max_denominator=7),
)
def test_simplex_sandwich(weights, R):
    S = Simplex(tuple(weights), R)
    count = simplex_count(S)
    assert count == oracles.lattice_count(weights, R)
    assert simplex_volume(S) <= count <= simplex_upper_volume(S)
    assert simplex_volume(S) == oracles.simplex_volume_integral(weights, R)


# ---- exceptional sets -------------------------------------------------------


@SETTINGS
@given(int_sets(max_m=12), st.integers(1, 4))
def test_exceptional_sets_nested(A, t):
    assume(A.ell >= 1)
    small = set(exceptional_set(A, t).members)
    big = exceptional_set(A, t + 1)
    assert small <= set(big.members)
    assert frobenius_t(A, t) <= big.frobenius_t


@SETTINGS
@given(int_sets(max_m=12), st.integers(1, 5))
def test_exceptional_set_window(A, t):
    assume(A.ell >= 1)
    E = exceptional_set(A, t)
    top = E.frobenius_t
    assert E.members == tuple(n for n in range(top + 1) if rho_total(A, n) < t)
    assert all(rho_total(A, n) >= t for n in range(top + 1, top + 2 * A.m + 1))
    assert top <= scan_cap(A, t)


@SETTINGS
@given(int_sets(max_m=12), st.integers(2, 6))
def test_frobenius_brackets(A, t):
    assume(A.ell >= 1)
    lo, hi = frobenius_brackets(A, t)
    fr = frobenius_t(A, t)
    assert lo < fr <= hi


# ---- sumsets ----------------------------------------------------------------


@SETTINGS
@given(int_sets(max_m=10), st.integers(1, 3), st.integers(0, 6))
def test_sumset_monotone_and_contained(A, t, h):
    assume(A.ell >= 1 or t == 1)
    cur = set(t_sumset(A, h, t))
    assert cur <= set(structured_rhs(A, h, t))
    nxt = set(t_sumset(A, h + 1, t))
    assert {x + a for x in cur for a in A} <= nxt
    assert sorted(cur) == oracles.t_sumset(A.elements, h, t)


@SETTINGS
@given(int_sets(max_m=10), st.integers(1, 3), st.integers(0, 6))
def test_sumset_reflection(A, t, h):
    mirrored = {h * A.m - n for n in t_sumset(reflect(A), h, t)}
    assert set(t_sumset(A, h, t)) == mirrored


@SETTINGS
@given(int_sets(max_m=8), st.integers(1, 3))
def test_structure_persists_past_exact_index(A, t):
    assume(A.ell >= 1 or t == 1)
    ctx = StructureContext(A, t)
    from tsumset.structure import ht_scan

    scan = ht_scan(A, t)
    assert scan.ht <= scan.cap
    assert all(ctx.structured(h) for h in range(scan.ht, scan.cap + 2 * A.m + 1))


# ---- three-element sets -----------------------------------------------------


@SETTINGS
@given(three_sets())
def test_rho_closed_reciprocity(T):
    am = T.a * T.m
    for n in range(am + 1):
        if n % T.a and n % T.m:
            assert rho_closed(T, n) + rho_closed(T, am - n) == 1


@SETTINGS
@given(three_sets(max_m=20), st.integers(0, 300))
def test_rho_closed_matches_enumeration(T, n):
    assert rho_closed(T, n) == oracles.rho_total((0, T.a, T.m), n)


# ---- extremal family --------------------------------------------------------


@SETTINGS
@given(st.integers(5, 40), st.integers(2, 6), st.integers(0, 12))
def test_extremal_parameters(m, ell, R):
    assume(2 * ell <= m and R * (ell - 1) <= m - ell)
    inst = build(m, ell, R)
    assert inst.g // m == R
    assert Fraction((ell + R) ** ell, ell**ell) <= inst.t <= Fraction((ell + R) ** ell, math.factorial(ell))


# ---- lattice ----------------------------------------------------------------


@st.composite
def planar_sets(draw, max_size=4):
    pts = draw(st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3)), min_size=2, max_size=max_size, unique=True))
    pts = sorted({(0, 0), *pts})
    assume(len(pts) >= 3)
    try:
        A = LatticePointSet.from_iterable(pts)
    except Exception:
        assume(False)
    assume(A.full_dimensional())
    return A


@settings(max_examples=30, deadline=None)
@given(planar_sets())
def test_span_membership_brute_force(A):
    span = lattice_span(A.points)
    for p in [(1, 0), (0, 1), (1, 1), (2, 3), (-1, 2), (3, -3), (7, -11)]:
        assert span.contains(p) == oracles.span_contains_2d(A.points, p)
        if oracles.span_contains(list(A.points), p, 3):
            assert span.contains(p)


@settings(max_examples=30, deadline=None)
@given(planar_sets(), st.tuples(st.integers(0, 7), st.integers(0, 7)))
def test_zd_stabilization(A, p):
    cap = stabilization_cap(A, p)
    assume(cap <= 12)
    values = {rho_h_d(A, h, p) for h in (cap, cap + 1, cap + 3)}
    assert len(values) == 1
    assert values.pop() == oracles.rho_h_points(list(A.points), cap + 3, p)


@settings(max_examples=20, deadline=None)
@given(planar_sets(), st.integers(1, 3))
def test_zd_lhs_within_rhs(A, t):
    ctx = ZdStructure(A, t, 5)
    for h in range(6):
        assert set(ctx.lhs(h)) <= set(ctx.rhs(h))
