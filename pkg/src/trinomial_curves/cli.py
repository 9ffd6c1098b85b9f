"""Command-line front end with reproducible, provenance-stamped output.

Identical configurations produce byte-identical output regardless of the
thread count: all results are exact integers, merge orders are fixed, and
machine-readable records never embed wall-clock data.

Exit codes: 0 all checks pass, 1 at least one law failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from contextlib import nullcontext
from typing import Optional, TextIO

from . import __version__
from .diophantine import opti_max
from .errors import TrinomialCurveError
from .exponent_lattice import ExponentMatrix, coker, constants
from .finite_field import DEFAULT_MAX_Q, FieldCtx, build_field, parse_prime_power
from .gauss import gauss_sweep, project_count
from .genus import compare_genera, genus_via_deltas, normalize_exponents
from .law_verifier import verify_family
from .point_counter import DEFAULT_TABLE_BUDGET, CurveFamily, n_table
from .sweep import SMALL_PRIME_POWERS, run_battery

ENV_BUDGET = "TRICURVES_MAX_Q"


def _tool_block() -> dict:
    return {"name": "tricurves", "version": __version__}


def _stamp(record: dict, field: Optional[FieldCtx]) -> dict:
    record["tool"] = _tool_block()
    if field is not None:
        record["field"] = field.provenance()
    return record


def _emit_json(record: dict, out: TextIO):
    json.dump(record, out, sort_keys=True, separators=(",", ": "))
    out.write("\n")


def _parse_exp(text: str) -> ExponentMatrix:
    parts = [p for p in text.replace(",", " ").split() if p]
    if len(parts) != 6:
        raise TrinomialCurveError("--exp expects six integers a11,a12,a21,a22,a31,a32")
    return ExponentMatrix.from_flat([int(p) for p in parts])


def _field_from_args(args) -> FieldCtx:
    budget = args.budget
    if args.q is not None:
        if args.p is not None or args.n != 1:
            raise TrinomialCurveError("give either --q or --p/--n, not both")
        p, n = parse_prime_power(args.q)
        return build_field(p, n, max_q=budget)
    if args.p is None:
        raise TrinomialCurveError("a field is required: --q Q or --p P [--n N]")
    return build_field(args.p, args.n, max_q=budget)


def _add_field_args(sub):
    sub.add_argument("--p", type=int, help="field characteristic")
    sub.add_argument("--n", type=int, default=1, help="extension degree (default 1)")
    sub.add_argument("--q", type=int, help="prime power, alternative to --p/--n")
    sub.add_argument(
        "--budget",
        type=int,
        default=int(os.environ.get(ENV_BUDGET, DEFAULT_MAX_Q)),
        help=f"largest permitted q (default {ENV_BUDGET} or {DEFAULT_MAX_Q})",
    )


def _add_common(sub, with_exp=True):
    if with_exp:
        sub.add_argument("--exp", required=True,
                         help="six exponents a11,a12,a21,a22,a31,a32 (the B matrix is derived)")
    sub.add_argument("--format", choices=("json", "csv", "text"), default="json")
    sub.add_argument("--out", help="output file (default stdout)")
    sub.add_argument("--threads", type=int, default=1)


def _open_out(args):
    if args.out:
        return open(args.out, "w", encoding="utf-8")
    return nullcontext(sys.stdout)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_constants(args) -> int:
    field = _field_from_args(args)
    exponents = _parse_exp(args.exp)
    B = exponents.b
    record = _stamp(
        {
            "exponents": exponents.flat(),
            "b_matrix": [list(r) for r in B],
            "constants": constants(B, field.q).to_dict(),
            "coker": coker(B, field.q).to_dict(),
        },
        field,
    )
    with _open_out(args) as out:
        if args.format == "text":
            c = record["constants"]
            out.write(
                f"q={field.q} d={c['d']} e={c['e']} f={c['f']} k={c['k']} "
                f"w={c['w']} 2g~={c['twice_g_tilde']}\n"
            )
        else:
            _emit_json(record, out)
    return 0


def cmd_table(args) -> int:
    field = _field_from_args(args)
    fam = CurveFamily.build(_parse_exp(args.exp), field)
    tbl = n_table(fam, args.mode, threads=args.threads, budget=args.table_budget,
                  method="broadcast" if args.mode == "full" else "direct")
    with _open_out(args) as out:
        if args.mode == "full":
            out.write("i,j,star,N\n")
            for i, j, star, nv in tbl.iter_full_rows():
                out.write(f"{i},{j},{star},{nv}\n")
        elif args.format == "csv":
            out.write("i_rep,j_rep,star_count,N\n")
            for i, j, star, nv in tbl.folded_rows():
                out.write(f"{i},{j},{star},{nv}\n")
        else:
            record = _stamp(
                {
                    "exponents": fam.exponents.flat(),
                    "mode": "folded",
                    "rows": [list(r) for r in tbl.folded_rows()],
                    "constants": fam.constants.to_dict(),
                },
                field,
            )
            _emit_json(record, out)
    if args.plot:
        from .plots import plot_n_table

        plot_n_table(tbl, args.plot)
    return 0


def cmd_verify(args) -> int:
    field = _field_from_args(args)
    fam = CurveFamily.build(_parse_exp(args.exp), field)
    inject = None
    if args.inject_fault:
        vals = [int(x) for x in args.inject_fault.split(",")]
        if len(vals) != 3:
            raise TrinomialCurveError("--inject-fault expects I,J,DELTA")
        inject = (vals[0], vals[1], vals[2])
    report = verify_family(fam, args.depth, threads=args.threads, inject_fault=inject)
    with _open_out(args) as out:
        if args.format == "json":
            _emit_json(_stamp(report.to_dict(), field), out)
        else:
            for line in report.summary_lines():
                out.write(line + "\n")
    if not report.all_pass:
        return 1
    if args.strict and any(c.law == "prop4_hypothesis" and not c.passed for c in report.checks):
        return 1
    return 0


def cmd_gauss(args) -> int:
    failures = 0
    witnesses = []
    with _open_out(args) as out:
        for w in gauss_sweep(args.pmax, p_min=args.pmin):
            if args.check_projective and project_count(w.p) != w.m_p:
                failures += 1
            witnesses.append(w)
            record = w.to_dict()
            record["tool"] = _tool_block()
            _emit_json(record, out)
    if args.plot:
        from .plots import plot_gauss_sweep

        plot_gauss_sweep(witnesses, args.plot)
    return 1 if failures else 0


def cmd_genus(args) -> int:
    exponents = _parse_exp(args.exp)
    if args.normalize:
        exponents = normalize_exponents(exponents)
    result = genus_via_deltas(exponents)
    record = {
        "exponents": exponents.flat(),
        "degree": result.degree,
        "deltas": [[label, d] for label, d in result.deltas],
        "g": result.genus,
        "notes": result.notes,
        "tool": _tool_block(),
    }
    if args.q:
        record["g_tilde_comparison"] = [
            dict(q=q, **compare_genera(exponents, q)) for q in args.q
        ]
    with _open_out(args) as out:
        if args.format == "text":
            out.write(f"degree {result.degree}, genus {result.genus}\n")
            for label, d in result.deltas:
                out.write(f"  delta at {label}: {d}\n")
        else:
            _emit_json(record, out)
    return 0


def cmd_opti(args) -> int:
    result = opti_max(args.q)
    record = result.to_dict()
    record["witness"] = record["witnesses"][0] if record["witnesses"] else None
    record["tool"] = _tool_block()
    with _open_out(args) as out:
        if args.format == "text":
            out.write(f"max x = {result.max_x}, witness = {record['witness']}\n")
        else:
            _emit_json(record, out)
    return 0


def cmd_sweep(args) -> int:
    qs = [int(x) for x in args.q_list.split(",")] if args.q_list else SMALL_PRIME_POWERS
    verdicts = run_battery(
        qs,
        args.lo,
        args.hi,
        depth=args.depth,
        threads=args.threads,
        dedupe=not args.no_dedupe,
    )
    failures = 0
    with _open_out(args) as out:
        for v in verdicts:
            if not v.all_pass:
                failures += 1
            record = v.to_dict()
            record["tool"] = _tool_block()
            _emit_json(record, out)
    return 1 if failures else 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="tricurves",
        description="exact point counts and error-term laws for trinomial curves over F_q",
    )
    ap.add_argument("--version", action="version", version=f"tricurves {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("constants", help="invariants d, e, f, k, w, 2g~ and the cokernel")
    _add_field_args(sp)
    _add_common(sp)
    sp.set_defaults(fn=cmd_constants)

    sp = sub.add_parser("table", help="error-term table, folded or full")
    _add_field_args(sp)
    _add_common(sp)
    sp.add_argument("--mode", choices=("folded", "full"), default="folded")
    sp.add_argument("--table-budget", type=int, default=DEFAULT_TABLE_BUDGET,
                    help="largest q for which a full table may be built")
    sp.add_argument("--plot", help="also render a figure to this path")
    sp.set_defaults(fn=cmd_table)

    sp = sub.add_parser("verify", help="machine-check all identities and bounds")
    _add_field_args(sp)
    _add_common(sp)
    sp.add_argument("--depth", choices=("folded", "full"), default="full")
    sp.add_argument("--strict", action="store_true",
                    help="also fail on reported (non-law) anomalies")
    sp.add_argument("--inject-fault", help="I,J,DELTA: perturb one entry (self-test)")
    sp.set_defaults(fn=cmd_verify)

    sp = sub.add_parser("gauss", help="cubic Fermat certificates for a prime range")
    _add_common(sp, with_exp=False)
    sp.add_argument("--pmin", type=int, default=3)
    sp.add_argument("--pmax", type=int, required=True)
    sp.add_argument("--check-projective", action="store_true",
                    help="cross-check against the projective enumeration oracle")
    sp.add_argument("--plot", help="also render the sweep figure to this path")
    sp.set_defaults(fn=cmd_gauss)

    sp = sub.add_parser("genus", help="genus via delta invariants, with g~ comparison")
    _add_common(sp)
    sp.add_argument("--q", type=int, action="append",
                    help="compare with 2g~ over F_q (repeatable)")
    sp.add_argument("--normalize", action="store_true",
                    help="search coordinate relabelings for an accepted shape")
    sp.set_defaults(fn=cmd_genus)

    sp = sub.add_parser("opti", help="max x with x+y+z=0, x^2+y^2+z^2=6q")
    _add_common(sp, with_exp=False)
    sp.add_argument("--q", type=int, required=True)
    sp.set_defaults(fn=cmd_opti)

    sp = sub.add_parser("sweep", help="battery verification over exponent ranges")
    _add_common(sp, with_exp=False)
    sp.add_argument("--lo", type=int, default=0)
    sp.add_argument("--hi", type=int, default=4)
    sp.add_argument("--q-list", help="comma-separated prime powers (default battery list)")
    sp.add_argument("--depth", choices=("folded", "full"), default="full")
    sp.add_argument("--no-dedupe", action="store_true",
                    help="verify every exponent matrix, not one per B")
    sp.set_defaults(fn=cmd_sweep)
    return ap


def main(argv: Optional[list[str]] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except TrinomialCurveError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
