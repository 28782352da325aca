"""Registry of worked examples regenerated by ``tsumset repro``.

Each case is a zero-argument callable returning a JSON-ready value. Counts are
decimal strings and rationals are ``"p/q"`` strings so the golden files are
lossless.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable

from . import denumerant as dn
from . import extremal as ex
from . import frobenius as fb
from . import structure as st
from . import threeset as ts
from .core import IntegerSet, InvalidInputError, TsumsetError, normalize, reflect
from .lattice import zd

S = IntegerSet.of
TRIANGLE = [(0, 0), (1, 0), (0, 1)]
DIAMOND = [(0, 0), (2, 0), (0, 2), (1, 1)]
PENTAGON = [(0, 0), (2, 0), (3, 2), (1, 3), (-1, 2)]


def _lp(points) -> zd.LatticePointSet:
    return zd.LatticePointSet.from_iterable(points)


def _pair(x: tuple) -> list[str]:
    return [str(v) for v in x]


def _error_name(fn: Callable) -> str:
    try:
        fn()
    except TsumsetError as exc:
        return type(exc).__name__
    return "no error"


def _normalize_case(raw):
    A, rec = normalize(raw)
    return {"set": str(A), "shift": rec.shift, "scale": rec.scale}


def _simplex(weights, R):
    s = dn.Simplex(tuple(weights), Fraction(R))
    return {
        "count": str(dn.simplex_count(s)),
        "volume": str(dn.simplex_volume(s)),
        "upper_volume": str(dn.simplex_upper_volume(s)),
    }


def _exceptional(A, t):
    E = fb.exceptional_set(A, t)
    return {"members": list(E.members), "frobenius_t": E.frobenius_t}


def _extremal_verify(m, ell, R):
    return ex.verify(ex.build(m, ell, R)).to_dict()


def _d1_bound():
    A = S(0, 3, 5)
    out = {}
    for t in (1, 2, 3):
        phi = {
            (0,): Fraction(fb.frobenius_t(A, t) + A.m, A.m),
            (5,): Fraction(fb.frobenius_t(reflect(A), t) + A.m, A.m),
        }
        out[str(t)] = {
            "formula": zd.zd_bound_formula(_lp([(0,), (3,), (5,)]), t, phi),
            "mt1": st.bound_mt1(A, t),
            "h_plus_plus_h_minus": sum(st.h_plus_minus(A, t)),
        }
    return out


def _lattice_sumset(points, h, t):
    lhs = zd.t_sumset_d(_lp(points), h, t)
    rhs = zd.structured_rhs_d(_lp(points), h, t)
    return {"lhs_size": len(lhs), "rhs_size": len(rhs), "structured": lhs == rhs}


def _index(points, t, cap):
    r = zd.empirical_structure_index(_lp(points), t, cap)
    return {"h_star": r["h_star"], "failing_h": r["failing_h"]}


def _poly(points, t, hs):
    r = zd.hull_size_poly_check(_lp(points), t, hs)
    out = {k: r[k] for k in ("sizes", "tail_length", "conclusive")}
    out["coefficients"] = r.get("coefficients")
    return out


CASES: dict[str, Callable[[], object]] = {
    # core
    "normalize/0,3,5": lambda: _normalize_case([0, 3, 5]),
    "normalize/3,6,9,15": lambda: _normalize_case([3, 6, 9, 15]),
    "normalize/5": lambda: _error_name(lambda: normalize([5])),
    "reflect/0,3,5": lambda: str(reflect(S(0, 3, 5))),
    "reflect/0,1,6,7": lambda: str(reflect(S(0, 1, 6, 7))),
    # denumerant
    "rho_h/0,3,5/h2/n8": lambda: str(dn.rho_h(S(0, 3, 5), 2, 8)),
    "rho_h/0,3,5/h3/n15": lambda: str(dn.rho_h(S(0, 3, 5), 3, 15)),
    "rho_h/0,3,5/h5/n15": lambda: str(dn.rho_h(S(0, 3, 5), 5, 15)),
    "rho_total/0,3,5/n0": lambda: str(dn.rho_total(S(0, 3, 5), 0)),
    "rho_total/0,3,5/n7": lambda: str(dn.rho_total(S(0, 3, 5), 7)),
    "rho_total/0,3,5/n15": lambda: str(dn.rho_total(S(0, 3, 5), 15)),
    "rho_batch/0,1/h3": lambda: [str(v) for v in dn.rho_batch(S(0, 1), 3).values],
    "rho_batch/0,3,5/h0": lambda: [str(v) for v in dn.rho_batch(S(0, 3, 5), 0).values],
    "rho_batch/0,3,5/h2/support": lambda: dn.rho_batch(S(0, 3, 5), 2).support(),
    "snn/0,3,5,7/n4": lambda: str(dn.snn_count(S(0, 3, 5, 7), 4)),
    "snn/0,3,5/n2": lambda: str(dn.snn_count(S(0, 3, 5), 2)),
    "snn/0,4,6,7,9/n11": lambda: str(dn.snn_count(S(0, 4, 6, 7, 9), 11)),
    "simplex/2,3/R6": lambda: _simplex((2, 3), 6),
    "simplex/1,1,1/R0": lambda: _simplex((1, 1, 1), 0),
    "simplex/1,1/R2": lambda: _simplex((1, 1), 2),
    "simplex/0,1/R2": lambda: _error_name(lambda: dn.simplex_volume(dn.Simplex((0, 1), Fraction(2)))),
    "rho_brackets/0,3,5/n25": lambda: _pair(dn.rho_brackets(S(0, 3, 5), 25)),
    "rho_brackets/0,3,5/n10": lambda: _pair(dn.rho_brackets(S(0, 3, 5), 10)),
    "rho_brackets/0,2,3/n5": lambda: _pair(dn.rho_brackets(S(0, 2, 3), 5)),
    "rho_upper_sound/0,3,5/n15": lambda: str(dn.rho_upper_sound(S(0, 3, 5), 15)),
    "growth_check/0,3,5/n15/k0": lambda: dn.growth_check(S(0, 3, 5), 15, 0),
    "growth_check/0,3,5/n15/k15": lambda: dn.growth_check(S(0, 3, 5), 15, 15),
    "growth_check/0,2,3/n6/k0": lambda: dn.growth_check(S(0, 2, 3), 6, 0),
    # frobenius
    "exceptional/0,3,5/t1": lambda: _exceptional(S(0, 3, 5), 1),
    "exceptional/0,1,4/t1": lambda: _exceptional(S(0, 1, 4), 1),
    "exceptional/0,3,5/t2": lambda: _exceptional(S(0, 3, 5), 2),
    "frobenius_t/0,1,6,7/t6": lambda: fb.frobenius_t(S(0, 1, 6, 7), 6),
    "brackets/0,3,5/t2": lambda: _pair(fb.frobenius_brackets(S(0, 3, 5), 2)),
    "brackets/0,3,5/t1": lambda: _pair(fb.frobenius_brackets(S(0, 3, 5), 1)),
    "brackets/0,1,6,7/t6": lambda: list(fb.bracket_holds(S(0, 1, 6, 7), 6, fb.frobenius_t(S(0, 1, 6, 7), 6))),
    # structure
    "t_sumset/0,3,5/h2/t1": lambda: st.t_sumset(S(0, 3, 5), 2, 1),
    "t_sumset/0,3,5/h0/t1": lambda: st.t_sumset(S(0, 3, 5), 0, 1),
    "t_sumset/0,1,6,7/h5/t6/has17": lambda: 17 in st.t_sumset(S(0, 1, 6, 7), 5, 6),
    "rhs/0,3,5/h2/t1": lambda: st.structured_rhs(S(0, 3, 5), 2, 1),
    "rhs/0,1/h4/t1": lambda: st.structured_rhs(S(0, 1), 4, 1),
    "rhs/0,1,6,7/h5/t6/has17": lambda: 17 in st.structured_rhs(S(0, 1, 6, 7), 5, 6),
    "structure/0,1,6,7/h5/t6": lambda: st.is_structured(S(0, 1, 6, 7), 5, 6).to_dict(),
    "structure/0,1,6,7/hmt1/t6": lambda: st.is_structured(
        S(0, 1, 6, 7), st.bound_mt1(S(0, 1, 6, 7), 6), 6
    ).structured,
    "ht/0,3,5/t3": lambda: st.ht_exact(S(0, 3, 5), 3),
    "ht/0,1,6,7/t6": lambda: st.ht_scan(S(0, 1, 6, 7), 6).to_dict(),
    "ht/0,1/t1": lambda: st.ht_exact(S(0, 1), 1),
    "mt1/0,3,5/t1": lambda: st.bound_mt1(S(0, 3, 5), 1),
    "mt1/0,3,5/t2": lambda: st.bound_mt1(S(0, 3, 5), 2),
    "mt1/0,1/t1": lambda: st.bound_mt1(S(0, 1), 1),
    "mt2/0,1,6,7/t6": lambda: list(st.bound_mt2(S(0, 1, 6, 7), 6)),
    "yz/0,3,5/t2": lambda: st.bound_yz(S(0, 3, 5), 2),
    "yz/0,1,6,7/t1": lambda: st.bound_yz(S(0, 1, 6, 7), 1),
    "h_pm/0,3,5/t1": lambda: list(st.h_plus_minus(S(0, 3, 5), 1)),
    "h_pm/0,3,5/t2": lambda: list(st.h_plus_minus(S(0, 3, 5), 2)),
    "long_interval/0,3,5/t1": lambda: st.long_interval_check(S(0, 3, 5), 1),
    "long_interval/0,1/t1": lambda: st.long_interval_check(S(0, 1), 1),
    "long_interval/0,1,6,7/t6": lambda: st.long_interval_check(S(0, 1, 6, 7), 6),
    # extremal
    "extremal/build/7,2,2": lambda: (lambda i: [str(i.set), str(i.t), i.g])(ex.build(7, 2, 2)),
    "extremal/build/5,2,0": lambda: (lambda i: [str(i.set), str(i.t), i.g])(ex.build(5, 2, 0)),
    "extremal/build/7,4,1": lambda: _error_name(lambda: ex.build(7, 4, 1)),
    "extremal/verify/7,2,2": lambda: _extremal_verify(7, 2, 2),
    "extremal/verify/9,2,3": lambda: _extremal_verify(9, 2, 3),
    "extremal/verify/11,3,2": lambda: _extremal_verify(11, 3, 2),
    "extremal/asymptotic/25": lambda: ex.asymptotic_report(25),
    "extremal/asymptotic/9": lambda: ex.asymptotic_report(9),
    "extremal/asymptotic/4": lambda: _error_name(lambda: ex.asymptotic_report(4)),
    # threeset
    "threeset/rho/3,5/n15": lambda: str(ts.rho_closed(ts.ThreeSet(3, 5), 15)),
    "threeset/rho/3,5/n7": lambda: str(ts.rho_closed(ts.ThreeSet(3, 5), 7)),
    "threeset/rho/3,5/n0": lambda: str(ts.rho_closed(ts.ThreeSet(3, 5), 0)),
    "threeset/fr/3,5/t1": lambda: ts.frobenius_t_closed(ts.ThreeSet(3, 5), 1),
    "threeset/fr/3,5/t2": lambda: ts.frobenius_t_closed(ts.ThreeSet(3, 5), 2),
    "threeset/fr/2,3/t1": lambda: ts.frobenius_t_closed(ts.ThreeSet(2, 3), 1),
    "threeset/size/3,5/t1": lambda: str(ts.exceptional_size_closed(ts.ThreeSet(3, 5), 1)),
    "threeset/size/3,5/t2": lambda: str(ts.exceptional_size_closed(ts.ThreeSet(3, 5), 2)),
    "threeset/size/2,3/t1": lambda: str(ts.exceptional_size_closed(ts.ThreeSet(2, 3), 1)),
    "threeset/shift/3,5/t2": lambda: ts.shift_identity_check(ts.ThreeSet(3, 5), 2),
    "threeset/shift/3,5/t1": lambda: ts.shift_identity_check(ts.ThreeSet(3, 5), 1),
    "threeset/shift/4,7/t3": lambda: ts.shift_identity_check(ts.ThreeSet(4, 7), 3),
    "threeset/structured/3,5/t2/h40": lambda: ts.always_structured_check(ts.ThreeSet(3, 5), 2, 40),
    "threeset/structured/4,7/t3/h40": lambda: ts.always_structured_check(ts.ThreeSet(4, 7), 3, 40),
    "threeset/structured/2,3/t1/h10": lambda: ts.always_structured_check(ts.ThreeSet(2, 3), 1, 10),
    # lattice
    "lattice/extremal/diamond": lambda: [list(v) for v in _lp(DIAMOND).vertices],
    "lattice/extremal/0,3,5": lambda: [list(v) for v in _lp([(0,), (3,), (5,)]).vertices],
    "lattice/extremal/triangle": lambda: [list(v) for v in _lp(TRIANGLE).vertices],
    "lattice/span/diamond": lambda: _lp(DIAMOND).span.to_dict(),
    "lattice/span/triangle": lambda: _lp(TRIANGLE).span.to_dict(),
    "lattice/span/0,3,5": lambda: _lp([(0,), (3,), (5,)]).span.to_dict(),
    "lattice/rho_h/triangle/h2/1,1": lambda: str(zd.rho_h_d(_lp(TRIANGLE), 2, (1, 1))),
    "lattice/rho_h/diamond/h2/2,2": lambda: str(zd.rho_h_d(_lp(DIAMOND), 2, (2, 2))),
    "lattice/rho_h/diamond/h5/0,0": lambda: str(zd.rho_h_d(_lp(DIAMOND), 5, (0, 0))),
    "lattice/rho_total/triangle/2,1": lambda: str(zd.rho_total_d(_lp(TRIANGLE), (2, 1))),
    "lattice/rho_total/triangle/-1,0": lambda: str(zd.rho_total_d(_lp(TRIANGLE), (-1, 0))),
    "lattice/rho_total/diamond/2,2": lambda: str(zd.rho_total_d(_lp(DIAMOND), (2, 2))),
    "lattice/delta/0,3,5": lambda: zd.delta_Delta(_lp([(0,), (3,), (5,)])).to_dict(),
    "lattice/delta/triangle": lambda: zd.delta_Delta(_lp(TRIANGLE)).to_dict(),
    "lattice/delta/segment": lambda: zd.delta_Delta(_lp([(0, 0), (1, 0)])).to_dict(),
    "lattice/sumset/triangle/h3/t1": lambda: _lattice_sumset(TRIANGLE, 3, 1),
    "lattice/sumset/triangle/h0/t1": lambda: zd.t_sumset_d(_lp(TRIANGLE), 0, 1),
    "lattice/sumset/diamond/h4/t1": lambda: _lattice_sumset(DIAMOND, 4, 1),
    "lattice/index/triangle/t1/12": lambda: _index(TRIANGLE, 1, 12),
    "lattice/index/diamond/t1/15": lambda: _index(DIAMOND, 1, 15),
    "lattice/index/triangle/t3/15": lambda: _index(TRIANGLE, 3, 15),
    "lattice/bound/0,3,5": _d1_bound,
    "lattice/bound/triangle/t1": lambda: zd.zd_bound_formula(
        _lp(TRIANGLE), 1, {v: 1 for v in _lp(TRIANGLE).vertices}
    ),
    "lattice/bound/missing_phi": lambda: _error_name(
        lambda: zd.zd_bound_formula(_lp(TRIANGLE), 1, {(0, 0): 1})
    ),
    "lattice/cover/triangle/2": lambda: zd.caratheodory_cover_check(_lp(TRIANGLE), 2),
    "lattice/cover/diamond/3": lambda: zd.caratheodory_cover_check(_lp(DIAMOND), 3),
    "lattice/cover/pentagon/2": lambda: zd.caratheodory_cover_check(_lp(PENTAGON), 2),
    "lattice/poly/triangle/t1": lambda: _poly(TRIANGLE, 1, range(0, 10)),
    "lattice/poly/0,3,5/t1": lambda: _poly([(0,), (3,), (5,)], 1, range(0, 12)),
    "lattice/poly/triangle/short": lambda: _poly(TRIANGLE, 1, range(0, 3)),
}


def run_case(name: str) -> object:
    if name not in CASES:
        raise InvalidInputError(f"unknown example {name!r}")
    return CASES[name]()


def run_all() -> dict[str, object]:
    return {name: fn() for name, fn in CASES.items()}
