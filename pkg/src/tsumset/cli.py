"""Command-line entry point.

Exit status: 0 success, 2 invalid input, 3 resource cap exceeded, 1 internal
inconsistency (including a golden-file mismatch in ``repro``).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Callable, Iterable, Sequence

from . import denumerant as dn
from . import extremal as ex
from . import frobenius as fb
from . import structure as st
from . import threeset as ts
from .core import (
    IntegerSet,
    InternalInconsistencyError,
    InvalidInputError,
    Limits,
    TsumsetError,
    parse_ints,
    parse_set,
    read_sets,
)
from .lattice import zd

GOLDEN_VERSION = "v1"
FORMATS = ("json", "csv", "table")


@dataclass(frozen=True)
class RunConfig:
    limits: Limits
    format: str = "json"
    jobs: int = 1
    witness_limit: int = st.WITNESS_LIMIT

    def __post_init__(self) -> None:
        if self.format not in FORMATS:
            raise InvalidInputError(f"unknown format {self.format!r}")
        if self.jobs < 1 or self.witness_limit < 0:
            raise InvalidInputError("jobs must be positive and witness limit nonnegative")
        lim = self.limits
        if min(lim.max_hm, lim.max_t, lim.max_cells, lim.max_points) < 1:
            raise InvalidInputError("resource caps must be positive")


# ---- output -----------------------------------------------------------------


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def dumps(obj) -> str:
    return json.dumps(_jsonable(obj), indent=2, sort_keys=True)


def _cell(v) -> str:
    if isinstance(v, (list, tuple)):
        return " ".join(_cell(x) for x in v)
    if isinstance(v, dict):
        return json.dumps(_jsonable(v), sort_keys=True)
    return "" if v is None else str(v)


def _rows_to_csv(rows: Sequence[dict]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: _cell(v) for k, v in r.items()})
    return buf.getvalue()


def emit(obj, cfg: RunConfig, out) -> None:
    """Scalars print bare; records follow the configured format."""
    if isinstance(obj, bool):
        out.write(f"{json.dumps(obj)}\n")
        return
    if isinstance(obj, (int, str)):
        out.write(f"{obj}\n")
        return
    if cfg.format == "json":
        out.write(dumps(obj) + "\n")
        return
    rows = obj if isinstance(obj, list) and obj and isinstance(obj[0], dict) else None
    if rows is None:
        if isinstance(obj, dict):
            rows = [obj]
        else:
            rows = [{"value": v} for v in obj]
    if cfg.format == "csv":
        out.write(_rows_to_csv(rows))
        return
    for i, r in enumerate(rows):
        if i:
            out.write("\n")
        width = max(len(str(k)) for k in r)
        for k, v in r.items():
            out.write(f"{str(k).ljust(width)}  {_cell(v)}\n")


def _pmap(fn: Callable, items: list, jobs: int) -> list:
    # map preserves input order, so output is identical for any job count
    if jobs == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


# ---- argument helpers -------------------------------------------------------


def _set_arg(text: str) -> IntegerSet:
    try:
        return parse_set(text)
    except InvalidInputError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _int_list(text: str) -> list[int]:
    try:
        return parse_ints(text)
    except InvalidInputError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _sets_from(args) -> list[IntegerSet]:
    sets = list(args.set or [])
    if getattr(args, "file", None):
        with open(args.file) as fh:
            sets.extend(read_sets(fh))
    if not sets:
        raise InvalidInputError("give --set or --file")
    return sets


def _points_from(args) -> zd.LatticePointSet:
    if args.points and args.points_file:
        raise InvalidInputError("give only one of --points and --points-file")
    if args.points:
        return zd.parse_point_literal(args.points)
    if args.points_file:
        with open(args.points_file) as fh:
            return zd.parse_points(fh)
    raise InvalidInputError("give --points or --points-file")


def _parse_phi(text: str, d: int) -> dict:
    """``"0,0=1;1,0=2;0,1=3/2"`` maps vertices to rational values."""
    phi = {}
    for item in filter(None, (s.strip() for s in text.split(";"))):
        if "=" not in item:
            raise InvalidInputError(f"bad phi entry {item!r}, expected point=value")
        pt, val = item.split("=", 1)
        coords = tuple(parse_ints(pt))
        if len(coords) != d:
            raise InvalidInputError(f"phi point {pt!r} is not {d}-dimensional")
        try:
            phi[coords] = Fraction(val.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidInputError(f"bad phi value {val!r}") from exc
    return phi


# ---- Z commands -------------------------------------------------------------


def cmd_rho(args, cfg):
    A = args.set
    if args.n is None:
        if args.h is None:
            raise InvalidInputError("give --n, or --h for a whole table")
        table = dn.rho_batch(A, args.h, limits=cfg.limits)
        if cfg.format == "csv":
            return table.to_csv().rstrip("\n")
        return {"set": str(A), "h": args.h, "values": [str(v) for v in table.values]}
    if args.h is None:
        return str(dn.rho_total(A, args.n, limits=cfg.limits))
    return str(dn.rho_h(A, args.h, args.n, limits=cfg.limits))


def cmd_frobenius(args, cfg):
    A, t = args.set, args.t
    fr = fb.frobenius_t(A, t, limits=cfg.limits)
    rec = {"set": str(A), "t": t, "frobenius_t": fr}
    if A.ell >= 1:
        lo, hi = fb.frobenius_brackets(A, t)
        lower_ok, upper_ok = fb.bracket_holds(A, t, fr)
        rec.update(
            lower_bracket=str(lo),
            upper_bracket=str(hi),
            lower_holds=lower_ok if t >= 2 else None,
            upper_holds=upper_ok,
        )
    return rec


def cmd_exceptional(args, cfg):
    E = fb.exceptional_set(args.set, args.t, limits=cfg.limits)
    return {"set": str(args.set), **E.to_dict()}


def cmd_sumset(args, cfg):
    if args.rhs:
        return st.structured_rhs(args.set, args.h, args.t, limits=cfg.limits)
    return st.t_sumset(args.set, args.h, args.t, limits=cfg.limits)


def cmd_structure(args, cfg):
    return st.is_structured(args.set, args.h, args.t, limits=cfg.limits).to_dict(cfg.witness_limit)


def cmd_ht(args, cfg):
    return st.ht_scan(args.set, args.t, limits=cfg.limits).to_dict()


def cmd_bounds(args, cfg):
    rec = {"set": str(args.set), "t": args.t}
    rec.update(st.bounds(args.set, args.t, limits=cfg.limits).to_dict())
    return rec


def _compare_row(job) -> dict:
    A, t, limits = job
    scan = st.ht_scan(A, t, limits=limits)
    mt2 = st.bound_mt2(A, t)[1] if A.ell >= 1 else None
    return {
        "set": str(A),
        "t": t,
        "ht_exact": scan.ht,
        "mt1": scan.cap,
        "mt2": mt2,
        "yz": st.bound_yz(A, t),
    }


def cmd_compare_bounds(args, cfg):
    jobs = [(A, t, cfg.limits) for A in _sets_from(args) for t in args.t]
    rows = _pmap(_compare_row, jobs, cfg.jobs)
    return _rows_to_csv(rows).rstrip("\n") if cfg.format != "json" else rows


def _verify_triple(job) -> dict:
    (m, ell, R), limits = job
    return ex.verify(ex.build(m, ell, R), limits=limits).to_dict()


def _read_triples(path: str) -> list[tuple[int, int, int]]:
    triples = []
    with open(path, newline="") as fh:
        for row in csv.reader(fh):
            cells = [c.strip() for c in row]
            if not cells or not cells[0] or cells[0].startswith("#"):
                continue
            if cells[0].lower() == "m":
                continue  # header
            try:
                m, ell, R = (int(c) for c in cells[:3])
            except ValueError as exc:
                raise InvalidInputError(f"bad triple row {row!r}") from exc
            triples.append((m, ell, R))
    return triples


def cmd_extremal(args, cfg):
    if args.action == "verify":
        if None in (args.m, args.ell, args.R):
            raise InvalidInputError("verify needs --m, --ell and --R")
        return _verify_triple(((args.m, args.ell, args.R), cfg.limits))
    if args.action == "batch":
        if not args.file:
            raise InvalidInputError("batch needs --file with m,ell,R rows")
        reports = _pmap(_verify_triple, [(x, cfg.limits) for x in _read_triples(args.file)], cfg.jobs)
        if cfg.format == "json":
            return reports
        rows = [
            {k: r[k] for k in ("m", "ell", "R", "t", "g", "ht_exact", "mt1", "passed")} for r in reports
        ]
        return _rows_to_csv(rows).rstrip("\n")
    if args.m is None:
        raise InvalidInputError("asymptotic needs --m")
    return ex.asymptotic_report(args.m)


def cmd_threeset(args, cfg):
    T = ts.ThreeSet(args.a, args.m)
    need = {"rho": "n", "frobenius": "t", "size": "t", "shift": "t", "structured": "t"}[args.action]
    if getattr(args, need) is None:
        raise InvalidInputError(f"{args.action} needs --{need}")
    if args.action == "rho":
        return str(ts.rho_closed(T, args.n))
    if args.action == "frobenius":
        return ts.frobenius_t_closed(T, args.t)
    if args.action == "size":
        return str(ts.exceptional_size_closed(T, args.t))
    if args.action == "shift":
        return ts.shift_identity_check(T, args.t, limits=cfg.limits)
    return ts.always_structured_check(T, args.t, args.h_max, limits=cfg.limits)


# ---- Z^d commands -----------------------------------------------------------


def _require(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise InvalidInputError(f"{args.action} needs " + ", ".join("--" + n.replace("_", "-") for n in missing))


def cmd_lattice(args, cfg):
    A = _points_from(args)
    lim = cfg.limits
    act = args.action
    if act == "info":
        stats = zd.delta_Delta(A)
        return {
            "points": [list(p) for p in A.points],
            "vertices": [list(v) for v in A.vertices],
            "span": A.span.to_dict(),
            "validity_direction": list(A.direction),
            "direction_stats": stats.to_dict(),
        }
    if act in ("rho", "rho-total"):
        _require(args, "p")
        p = tuple(parse_ints(args.p))
        if len(p) != A.d:
            raise InvalidInputError(f"point {args.p!r} is not {A.d}-dimensional")
        if act == "rho-total":
            return str(zd.rho_total_d(A, p, limits=lim))
        _require(args, "h")
        return str(zd.rho_h_d(A, args.h, p, limits=lim))
    if act in ("sumset", "structure"):
        _require(args, "h", "t")
        ctx = zd.ZdStructure(A, args.t, args.h, limits=lim)
        if act == "sumset":
            return [list(p) for p in ctx.lhs(args.h)]
        ok, lhs, witnesses = ctx.structured(args.h)
        return {
            "h": args.h,
            "t": args.t,
            "structured": ok,
            "lhs_size": len(lhs),
            "witnesses": [list(p) for p in witnesses[: cfg.witness_limit]],
            "witnesses_truncated": len(witnesses) > cfg.witness_limit,
            "truncation": ctx.truncation(),
        }
    if act == "index":
        _require(args, "t", "h_cap")
        return zd.empirical_structure_index(A, args.t, args.h_cap, limits=lim)
    if act == "bound":
        _require(args, "t", "phi")
        return zd.zd_bound_formula(A, args.t, _parse_phi(args.phi, A.d))
    if act == "cover":
        _require(args, "lam")
        try:
            lam = Fraction(args.lam)
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidInputError(f"bad lambda {args.lam!r}") from exc
        return zd.caratheodory_cover_check(A, lam, args.sample_cap)
    _require(args, "t", "h_from", "h_to")
    return zd.hull_size_poly_check(A, args.t, range(args.h_from, args.h_to + 1), limits=lim)


# ---- repro ------------------------------------------------------------------


def golden_path(directory: str | None) -> Path:
    if directory:
        return Path(directory) / "examples.json"
    return Path(str(resources.files("tsumset") / "golden" / GOLDEN_VERSION / "examples.json"))


def _diff(expected: dict, actual: dict) -> list[str]:
    lines = []
    for name in sorted(set(expected) | set(actual)):
        if name not in actual:
            lines.append(f"- {name}: missing from this run")
        elif name not in expected:
            lines.append(f"+ {name}: not in golden file")
        elif expected[name] != actual[name]:
            lines.append(f"! {name}: golden {json.dumps(expected[name])} != {json.dumps(actual[name])}")
    return lines


def cmd_repro(args, cfg):
    from . import examples

    names = args.only or list(examples.CASES)
    actual = {n: _jsonable(examples.run_case(n)) for n in names}
    path = golden_path(args.golden_dir)
    if args.update:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(dumps(actual) + "\n")
        return {"written": str(path), "cases": len(actual)}
    expected = json.loads(path.read_text())
    if args.only:
        expected = {n: expected[n] for n in names if n in expected}
    diff = _diff(expected, actual)
    if diff:
        raise InternalInconsistencyError("golden mismatch:\n" + "\n".join(diff))
    return {"golden": GOLDEN_VERSION, "cases": len(actual), "mismatches": 0}


# ---- parser -----------------------------------------------------------------


GLOBAL_DEFAULTS = {
    "format": "json",
    "jobs": 1,
    "witness_limit": st.WITNESS_LIMIT,
    "max_hm": None,
    "max_t": None,
    "max_cells": None,
    "max_points": None,
}


def _global_options() -> argparse.ArgumentParser:
    # SUPPRESS lets the options appear before or after the subcommand
    g = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    sup = argparse.SUPPRESS
    g.add_argument("--format", choices=FORMATS, default=sup, help="output format (default json)")
    g.add_argument("--jobs", type=int, default=sup, help="worker processes for batch commands")
    g.add_argument("--witness-limit", type=int, default=sup, help="witnesses kept in reports (default 32)")
    g.add_argument("--max-hm", type=int, default=sup, help="cap on h*m (env TSUMSET_MAX_HM)")
    g.add_argument("--max-t", type=int, default=sup, help="cap on t for extremal checks (env TSUMSET_MAX_T)")
    g.add_argument("--max-cells", type=int, default=sup, help="cap on DP table cells (env TSUMSET_MAX_CELLS)")
    g.add_argument("--max-points", type=int, default=sup, help="cap on lattice points (env TSUMSET_MAX_POINTS)")
    return g


def build_parser() -> argparse.ArgumentParser:
    common = _global_options()
    p = argparse.ArgumentParser(
        prog="tsumset", description=__doc__.splitlines()[0], parents=[common], allow_abbrev=False
    )
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        sp = sub.add_parser(name, help=help_text, parents=[common], allow_abbrev=False)
        sp.set_defaults(fn=fn)
        return sp

    s = add("rho", cmd_rho, "representation count at n, or a table over [0, hm]")
    s.add_argument("--set", type=_set_arg, required=True)
    s.add_argument("--n", type=int)
    s.add_argument("--h", type=int, help="parts budget; omit for the unrestricted count")

    for name, fn, text in (
        ("frobenius", cmd_frobenius, "Frobenius-t number with its brackets"),
        ("exceptional", cmd_exceptional, "the t-exceptional set"),
        ("ht", cmd_ht, "exact structure index with the scan trace"),
        ("bounds", cmd_bounds, "all upper bounds on the structure index"),
    ):
        s = add(name, fn, text)
        s.add_argument("--set", type=_set_arg, required=True)
        s.add_argument("--t", type=int, required=True)

    for name, fn, text in (
        ("sumset", cmd_sumset, "members of (hA)^(t)"),
        ("structure", cmd_structure, "compare (hA)^(t) with its structured form"),
    ):
        s = add(name, fn, text)
        s.add_argument("--set", type=_set_arg, required=True)
        s.add_argument("--h", type=int, required=True)
        s.add_argument("--t", type=int, required=True)
        if name == "sumset":
            s.add_argument("--rhs", action="store_true", help="print the structured form instead")

    s = add("compare-bounds", cmd_compare_bounds, "CSV rows set,t,ht_exact,mt1,mt2,yz")
    s.add_argument("--set", type=_set_arg, action="append")
    s.add_argument("--file", help="one set literal per line")
    s.add_argument("--t", type=_int_list, default=[1], help="comma-separated t values")

    s = add("extremal", cmd_extremal, "the extremal family: verify, batch or asymptotic")
    s.add_argument("action", choices=("verify", "batch", "asymptotic"))
    s.add_argument("--m", type=int)
    s.add_argument("--ell", type=int)
    s.add_argument("--R", type=int)
    s.add_argument("--file", help="CSV of m,ell,R rows for batch")

    s = add("threeset", cmd_threeset, "closed forms for {0, a, m}")
    s.add_argument("action", choices=("rho", "frobenius", "size", "shift", "structured"))
    s.add_argument("--a", type=int, required=True)
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--n", type=int)
    s.add_argument("--t", type=int)
    s.add_argument("--h-max", type=int, default=40)

    s = add("lattice", cmd_lattice, "point sets in Z^d")
    s.add_argument(
        "action",
        choices=("info", "rho", "rho-total", "sumset", "structure", "index", "bound", "cover", "poly"),
    )
    s.add_argument("--points", help='literal such as "0,0;1,0;0,1"')
    s.add_argument("--points-file", help="one point per line")
    s.add_argument("--p", help="target point, comma-separated")
    s.add_argument("--h", type=int)
    s.add_argument("--t", type=int)
    s.add_argument("--h-cap", type=int)
    s.add_argument("--phi", help='vertex values such as "0,0=1;1,0=1;0,1=1"')
    s.add_argument("--lam", help="dilation factor (rational)")
    s.add_argument("--sample-cap", type=int, default=5000)
    s.add_argument("--h-from", type=int)
    s.add_argument("--h-to", type=int)

    s = add("repro", cmd_repro, "regenerate the worked examples and diff against golden files")
    s.add_argument("--update", action="store_true", help="rewrite the golden file")
    s.add_argument("--golden-dir", help="directory holding examples.json")
    s.add_argument("--only", action="append", help="run a single named case (repeatable)")
    return p


def make_config(args) -> RunConfig:
    opts = {k: getattr(args, k, v) for k, v in GLOBAL_DEFAULTS.items()}
    overrides = {
        k: opts[k] for k in ("max_hm", "max_t", "max_cells", "max_points") if opts[k] is not None
    }
    limits = replace(Limits.from_env(), **overrides)
    return RunConfig(limits, opts["format"], opts["jobs"], opts["witness_limit"])


def run(argv: Iterable[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(None if argv is None else list(argv))
    except SystemExit as exc:
        # argparse reports usage errors with status 2, matching invalid input
        return int(exc.code or 0)
    try:
        cfg = make_config(args)
        emit(args.fn(args, cfg), cfg, out)
    except TsumsetError as exc:
        err.write(f"error: {exc}\n")
        return exc.exit_code
    except (ValueError, OSError) as exc:
        err.write(f"error: {exc}\n")
        return InvalidInputError.exit_code
    return 0


def main() -> None:
    sys.exit(run())
