"""Command-line entry point: ``ubcycle <command> ...``.

Exit status is 0 on success, 1 on a runtime failure and 2 on bad input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import os
import sys
from pathlib import Path

from . import gf2linalg as gf2
from .bounds import b_bounds
from .catalog import atlas, find_entry, format_rate, reference_curves
from .code import CssCode, UBCodeSpec, build_ub, read_spec_file
from .decoder import SimConfig, SimPoint, run_simulation
from .distance import (
    DEFAULT_DIM_LIMIT,
    DistanceLimitError,
    SearchConfig,
    certify_distance,
    code_search,
    exact_distance,
    low_weight_search,
)
from .logical import UnsupportedCodeError, logical_basis
from .ring import PolyParseError, parse_poly

class UsageError(Exception):
    pass


# input helpers


def _int_list(text: str) -> list[int]:
    """``"21"``, ``"20,21,30"`` or an inclusive range ``"20:40"``."""
    out = []
    for part in text.split(","):
        if ":" in part:
            lo, hi = part.split(":", 1)
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    return out


def _p_values(items: list[str]) -> list[float]:
    """Each item is a rate or ``start:stop:step`` (stop included)."""
    out = []
    for item in items:
        for part in item.split(","):
            if part.count(":") == 2:
                start, stop, step = map(float, part.split(":"))
                count = int(math.floor((stop - start) / step + 1e-9)) + 1
                out.extend(round(start + i * step, 12) for i in range(count))
            else:
                out.append(float(part))
    return out


def _specs(args) -> list[UBCodeSpec]:
    if args.code_file:
        specs = list(read_spec_file(args.code_file))
        if not specs:
            raise UsageError(f"no code specs in {args.code_file}")
        return specs
    if args.catalog is not None:
        try:
            return [find_entry(args.catalog).spec]
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None
    if args.n is None or args.a is None or args.l is None:
        raise UsageError("give --code-file, --catalog N, or all of -n, -a, -l")
    return [UBCodeSpec(args.n, parse_poly(args.a, args.n), args.l)]


def _single_code(args) -> CssCode:
    specs = _specs(args)
    if len(specs) != 1:
        raise UsageError("this command takes exactly one code")
    return build_ub(specs[0])


# output helpers


def _open_out(args):
    out = getattr(args, "out", None)
    if out in (None, "-"):
        return sys.stdout, False
    return open(out, "w", newline=""), True


def _emit(args, records: list[dict], *, columns: list[str] | None = None, default: str = "json") -> None:
    fmt = getattr(args, "format", None) or default
    fh, close = _open_out(args)
    try:
        if fmt == "json":
            payload = records[0] if len(records) == 1 else records
            fh.write(json.dumps(payload, indent=2) + "\n")
        elif fmt == "csv":
            cols = columns or list(records[0])
            writer = csv.DictWriter(fh, fieldnames=cols, extrasaction="ignore", lineterminator="\n")
            writer.writeheader()
            for rec in records:
                writer.writerow({k: _flat(v) for k, v in rec.items()})
        else:
            for rec in records:
                for key, val in rec.items():
                    fh.write(f"{key}: {_flat(val)}\n")
                if len(records) > 1:
                    fh.write("\n")
    finally:
        if close:
            fh.close()


def _flat(v):
    return json.dumps(v) if isinstance(v, (dict, list)) else v


# commands


def cmd_params(args) -> int:
    specs = _specs(args)
    records = []
    for i, spec in enumerate(specs):
        code = build_ub(spec)
        rec = code.to_dict()
        rec["rate"] = format_rate(code.k, code.N)
        records.append(rec)
        if args.export:
            _export(code, Path(args.export), i if len(specs) > 1 else None)
    _emit(args, records)
    return 0


def _export(code: CssCode, folder: Path, index: int | None) -> None:
    folder.mkdir(parents=True, exist_ok=True)
    tag = "" if index is None else f"_{index}"
    for name, M in (("hx", code.hx), ("hz", code.hz)):
        gf2.write_alist(M, folder / f"{name}{tag}.alist")
        gf2.write_pchk(M, folder / f"{name}{tag}.pchk")


ATLAS_COLUMNS = ["a", "l", "N", "k", "d_reported", "w", "R", "R_printed", "status"]


def cmd_atlas(args) -> int:
    records = []
    for row in atlas():
        e = row.entry
        records.append(
            {
                "a": e.a,
                "l": e.ell,
                "N": row.N,
                "k": row.k,
                "d_reported": e.d_reported,
                "w": row.w,
                "R": row.rate,
                "R_printed": e.rate_printed,
                "status": "ok" if not row.mismatches else "; ".join(row.mismatches),
            }
        )
    fmt = getattr(args, "format", None) or "text"
    if fmt != "text":
        _emit(args, records, columns=ATLAS_COLUMNS)
        return 0
    fh, close = _open_out(args)
    try:
        fh.write(f"{'a(x)':<16} {'l':>2} {'N':>5} {'k':>3} {'d':>3} {'w':>2} {'R':>6}  status\n")
        for r in records:
            fh.write(
                f"{r['a']:<16} {r['l']:>2} {r['N']:>5} {r['k']:>3} {r['d_reported']:>3} "
                f"{r['w']:>2} {r['R']:>6}  {r['status']}\n"
            )
    finally:
        if close:
            fh.close()
    return 0


def cmd_basis(args) -> int:
    code = _single_code(args)
    basis = logical_basis(code, validate=not args.no_validate)
    out = basis.to_dict()
    out.update(f=basis.f.support(), h=basis.h.support(), fstar=basis.fstar.support(), hstar=basis.hstar.support())
    _emit(args, [out])
    return 0


def cmd_bounds(args) -> int:
    code = _single_code(args)
    report = b_bounds(code, logical_basis(code))
    _emit(args, [report.to_dict()])
    return 0


def cmd_distance(args) -> int:
    code = _single_code(args)
    if args.exact:
        res = exact_distance(code, args.dim_limit)
    elif args.certify:
        res = certify_distance(code, max_weight=args.max_weight)
    else:
        res = low_weight_search(
            code, budget_secs=args.budget_secs, target=args.target, seed=_seed(args), max_iters=args.max_iters
        )
    _emit(args, [res.to_dict()])
    return 0


def cmd_search(args) -> int:
    cfg = SearchConfig(
        n_values=_int_list(args.n_values),
        ell_values=_int_list(args.l_values),
        w=args.w,
        require_divisor=args.divisor,
        min_k=args.min_k,
        min_dupper=args.min_dupper,
        max_dupper=args.max_dupper,
        threads=_threads(args),
    )
    fh, close = _open_out(args)
    try:
        for i, hit in enumerate(code_search(cfg)):
            if args.limit is not None and i >= args.limit:
                break
            fh.write(json.dumps(hit.to_dict()) + "\n")
            fh.flush()
    finally:
        if close:
            fh.close()
    return 0


def cmd_simulate(args) -> int:
    specs = _specs(args)
    if len(specs) != 1:
        raise UsageError("simulate takes exactly one code")
    p_list = _p_values(args.p)
    cfg = SimConfig(
        code=specs[0],
        p_list=p_list,
        alpha=args.alpha,
        max_iters=args.max_iters,
        target_logical_errors=args.target_errors,
        max_trials=args.max_trials,
        seed=_seed(args),
    )
    points = run_simulation(cfg, threads=_threads(args))
    fmt = getattr(args, "format", None) or "csv"
    fh, close = _open_out(args)
    try:
        if fmt == "json":
            fh.write(json.dumps({"code": str(cfg.code), "alpha": cfg.alpha, "max_iters": cfg.max_iters,
                                 "seed": cfg.seed, "points": [p.to_dict() for p in points]}, indent=2) + "\n")
        else:
            fh.write(SimPoint.CSV_HEADER + "\n")
            for pt in points:
                fh.write(pt.csv_row() + "\n")
    finally:
        if close:
            fh.close()
    return 0


PLOT_COLUMNS = ["source", "panel", "curve", "family", "p", "ler", "ci_low", "ci_high", "trials"]


def _read_sim_csv(path: str) -> list[dict]:
    text = Path(path).read_text()
    lines = text.splitlines()
    if not lines:
        return []
    if lines[0].strip() != SimPoint.CSV_HEADER:
        raise UsageError(f"{path}: expected header {SimPoint.CSV_HEADER!r}, got {lines[0]!r}")
    return list(csv.DictReader(io.StringIO(text)))


def cmd_plotdata(args) -> int:
    rows = []
    for path in args.sim or []:
        label = args.label or Path(path).stem
        for r in _read_sim_csv(path):
            rows.append(
                {
                    "source": "simulated",
                    "panel": "",
                    "curve": label,
                    "family": "UB",
                    "p": r["p"],
                    "ler": r["ler"],
                    "ci_low": r["ci_low"],
                    "ci_high": r["ci_high"],
                    "trials": r["trials"],
                }
            )
    if not args.no_reference:
        for ref in reference_curves():
            if args.panel is not None and ref.panel != args.panel:
                continue
            rows.append(
                {
                    "source": "reference",
                    "panel": ref.panel,
                    "curve": ref.curve,
                    "family": ref.family,
                    "p": f"{ref.p:g}",
                    "ler": f"{ref.ler:g}",
                    "ci_low": "",
                    "ci_high": "",
                    "trials": "",
                }
            )
    fh, close = _open_out(args)
    try:
        writer = csv.DictWriter(fh, fieldnames=PLOT_COLUMNS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    finally:
        if close:
            fh.close()
    return 0


# parser


def _threads(args) -> int:
    t = getattr(args, "threads", None)
    if t is None:
        t = int(os.environ.get("UBCYCLE_THREADS", "1"))
    return max(1, t)


def _seed(args) -> int:
    s = getattr(args, "seed", None)
    return 0 if s is None else s


def _global_flags() -> argparse.ArgumentParser:
    # SUPPRESS keeps a flag given before the command from being reset after it
    g = argparse.ArgumentParser(add_help=False)
    g.add_argument("--out", default=argparse.SUPPRESS, help="output path (default stdout)")
    g.add_argument("--format", choices=["json", "csv", "text"], default=argparse.SUPPRESS)
    g.add_argument("--threads", type=int, default=argparse.SUPPRESS, help="worker processes (env UBCYCLE_THREADS)")
    g.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    g.add_argument("-v", "--verbose", action="store_true", default=argparse.SUPPRESS)
    return g


def _code_flags() -> argparse.ArgumentParser:
    c = argparse.ArgumentParser(add_help=False)
    c.add_argument("--code-file", help="file of 'n=<int> a=<poly> l=<int>' lines")
    c.add_argument("--catalog", type=int, metavar="N", help="catalogued code with block length N")
    c.add_argument("-n", type=int)
    c.add_argument("-a", help="polynomial, e.g. '1+x+x^2+x^4' or '0,1,2,4'")
    c.add_argument("-l", type=int, help="Frobenius exponent: b = a^(2^l)")
    return c


def build_parser() -> argparse.ArgumentParser:
    glob = _global_flags()
    code = _code_flags()
    parser = argparse.ArgumentParser(prog="ubcycle", description="Univariate bicycle quantum LDPC codes.", parents=[glob])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("params", parents=[glob, code], help="code parameters as JSON")
    p.add_argument("--export", metavar="DIR", help="also write H_X, H_Z as .alist and .pchk")
    p.set_defaults(func=cmd_params)

    p = sub.add_parser("atlas", parents=[glob], help="rebuild the catalogued codes")
    p.set_defaults(func=cmd_atlas)

    p = sub.add_parser("basis", parents=[glob, code], help="explicit logical basis")
    p.add_argument("--no-validate", action="store_true")
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("bounds", parents=[glob, code], help="distance upper bounds")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("distance", parents=[glob, code], help="minimum distance")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", help="enumerate the whole kernel")
    mode.add_argument("--certify", action="store_true", help="weight-capped exhaustive search")
    mode.add_argument("--search", action="store_true", help="randomised low-weight search (default)")
    p.add_argument("--dim-limit", type=int, default=DEFAULT_DIM_LIMIT)
    p.add_argument("--max-weight", type=int)
    p.add_argument("--budget-secs", type=float, default=60.0)
    p.add_argument("--max-iters", type=int)
    p.add_argument("--target", type=int, help="stop once this weight is reached")
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("search", parents=[glob], help="enumerate UB codes (JSON lines)")
    p.add_argument("--n", dest="n_values", required=True, help="e.g. 21 or 20:40 or 21,30")
    p.add_argument("--l", dest="l_values", required=True)
    p.add_argument("--w", type=int, required=True, help="stabilizer weight budget")
    p.add_argument("--divisor", action="store_true", help="require a | x^n-1")
    p.add_argument("--min-k", type=int, default=0)
    p.add_argument("--min-dupper", type=int)
    p.add_argument("--max-dupper", type=int)
    p.add_argument("--limit", type=int, help="stop after this many hits")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("simulate", parents=[glob, code], help="BP-OSD-0 logical error rates")
    p.add_argument("--p", action="append", required=True, help="rate, list, or start:stop:step; repeatable")
    p.add_argument("--alpha", type=float, default=0.875)
    p.add_argument("--max-iters", type=int, default=1000)
    p.add_argument("--target-errors", type=int, default=150)
    p.add_argument("--max-trials", type=int, default=10**7)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("plotdata", parents=[glob], help="merge simulated and reference curves")
    p.add_argument("--sim", action="append", help="simulate CSV output; repeatable")
    p.add_argument("--label", help="curve name for simulated points")
    p.add_argument("--panel", type=int, choices=[1, 2])
    p.add_argument("--no-reference", action="store_true")
    p.set_defaults(func=cmd_plotdata)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if getattr(args, "verbose", False) else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except PolyParseError as exc:
        print(f"ubcycle: error: {exc}", file=sys.stderr)
        return 2
    except (DistanceLimitError, UnsupportedCodeError) as exc:
        print(f"ubcycle: {exc}", file=sys.stderr)
        return 1
    except (UsageError, ValueError, OSError) as exc:
        print(f"ubcycle: error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001
        print(f"ubcycle: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
