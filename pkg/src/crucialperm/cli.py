"""Command-line front end: count, table, verify, rsk, syt.

Exit codes: 0 success, 1 verification disagreement, 2 usage error,
3 budget exceeded.
"""
from __future__ import annotations

import argparse
import csv
import io
import sys
from pathlib import Path
from typing import Sequence

from . import oracle
from .errors import BudgetError, CrucialPermError
from .formulas import formulas_for, length_bounds
from .permcore import CrucialClass, Params, as_permutation, count_crucial, max_n
from .rsk import rsk
from .tableau import DEFAULT_SYT_CAP, as_shape, enumerate_syt, has_col_chain, has_row_chain

EXIT_OK, EXIT_DISAGREE, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

CSV_COLUMNS = ("class", "k", "l", "n", "count", "method")
METHODS = ("auto", "formula", "tableau", "brute")


class UsageError(CrucialPermError):
    pass


# --- counting with method selection --------------------------------------------


def count_with(cls: CrucialClass, params: Params, n: int, method: str, *, workers: int = 1) -> tuple[int, str]:
    """Count one cell with ``method``; returns (count, method actually used)."""
    if n < 1:
        raise UsageError(f"n must be at least 1, got {n}")
    if method in ("auto", "formula"):
        reports = formulas_for(cls, params, n)
        if reports:
            return reports[0].value, "formula"
        if method == "formula":
            raise UsageError(f"no closed form covers {cls.value} at {params}, n={n}")
        # no avoiding permutation is longer than (k-1)(l-1)
        if n > (params.k - 1) * (params.ell - 1):
            return 0, "bound"
        if params.k >= 3 and params.ell >= 3 and n < length_bounds(params, cls)[0]:
            return 0, "bound"
        if n <= DEFAULT_SYT_CAP:
            method = "tableau"
        elif n <= max_n():
            method = "brute"
        else:
            raise BudgetError("counting", n, min(DEFAULT_SYT_CAP, max_n()))
    if method == "tableau":
        return oracle.count_via_tableaux(n, params, cls), "tableau"
    if method == "brute":
        return count_crucial(n, params, workers=workers)[cls], "brute"
    raise UsageError(f"unknown method {method!r}")


def table_lengths(params: Params, cls: CrucialClass) -> range:
    """Lengths shown by ``table``: from the minimal length through the longest
    avoiding length (k-1)(l-1), which also covers 2(k-1)."""
    low, _, high = length_bounds(params, cls)
    return range(low, max(high + 1, 2 * (params.k - 1)) + 1)


# --- output helpers ---------------------------------------------------------------


def _emit_rows(rows: list[dict], fmt: str, human) -> None:
    if fmt == "json":
        sys.stdout.write(oracle.dumps(rows if len(rows) != 1 else rows[0]))
    elif fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        sys.stdout.write(buf.getvalue())
    else:
        for row in rows:
            print(human(row))


def _row(cls: CrucialClass, params: Params, n: int, count: int, method: str) -> dict:
    return {"class": cls.value, "k": params.k, "l": params.ell, "n": n, "count": count, "method": method}


# --- commands ------------------------------------------------------------------------


def cmd_count(args) -> int:
    cls, params = CrucialClass.parse(args.cls), Params(args.k, args.ell)
    count, used = count_with(cls, params, args.n, args.method, workers=args.workers)
    _emit_rows([_row(cls, params, args.n, count, used)], args.format, lambda r: str(r["count"]))
    return EXIT_OK


def cmd_table(args) -> int:
    cls, params = CrucialClass.parse(args.cls), Params(args.k, args.ell)
    params.require_theorem_range()
    rows = []
    for n in table_lengths(params, cls):
        count, used = count_with(cls, params, n, args.method, workers=args.workers)
        rows.append(_row(cls, params, n, count, used))
    _emit_rows(rows, args.format, lambda r: f"{r['n']:>3}  {r['count']:>10}  ({r['method']})")
    return EXIT_OK


def _verify_csv(reports: list[oracle.ValidationReport]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["class", "k", "l", "n", "brute_count", "tableau_count", "formula_counts", "verdict", "documented", "notes"])
    for r in reports:
        writer.writerow([
            r.cls.value, r.params.k, r.params.ell, r.n,
            "" if r.brute_count is None else r.brute_count,
            "" if r.tableau_count is None else r.tableau_count,
            ";".join(f"{k}={v}" for k, v in sorted(r.formula_counts.items())),
            r.verdict, str(r.documented).lower(), " | ".join(r.notes),
        ])
    return buf.getvalue()


def _verify_human(r: oracle.ValidationReport) -> str:
    def show(c):
        return "-" if c is None else str(c)

    forms = ", ".join(f"{k}={v}" for k, v in sorted(r.formula_counts.items())) or "-"
    tag = r.verdict + (" (documented)" if r.documented else "")
    line = f"{r.cls.value:<13} k={r.params.k} l={r.params.ell} n={r.n:<3} brute={show(r.brute_count):<7} tableau={show(r.tableau_count):<7} formula={forms}  {tag}"
    return "\n".join([line] + [f"    note: {note}" for note in r.notes])


def adjudications_for(limits: oracle.SweepLimits, *, workers: int = 1) -> list[dict]:
    """Tricrucial next-minimal policy comparisons for every k >= ell in range
    whose next-minimal length is within ``limits.max_n`` and the brute-force cap."""
    out = []
    for k in range(limits.min_k, limits.max_k + 1):
        for ell in range(limits.min_ell, min(k, limits.max_ell) + 1):
            n = k + 2 * ell - 4
            if n <= min(limits.max_n, max_n()):
                out.append(oracle.adjudicate_tricrucial_next(Params(k, ell), workers=workers))
    return out


def cmd_verify(args) -> int:
    if args.max_k < 3 or args.max_ell < 3 or args.max_n < 1:
        raise UsageError("need --max-k >= 3, --max-l >= 3 and --max-n >= 1")
    limits = oracle.SweepLimits(args.max_k, args.max_ell, args.max_n)
    progress = None
    if args.format == "human" and args.check is None:
        progress = lambda r: print(_verify_human(r))  # noqa: E731
    reports = oracle.full_sweep(limits, workers=args.workers, verbose=args.verbose, progress=progress)
    adjudications = adjudications_for(limits, workers=args.workers)
    doc = oracle.sweep_document(limits, reports, adjudications)
    ok = doc["summary"]["acceptable"]

    if args.check is not None:
        expected = Path(args.check).read_text(encoding="utf-8")
        same = expected == oracle.dumps(doc)
        print(f"report {'matches' if same else 'DIFFERS FROM'} {args.check}")
        return EXIT_OK if same and ok else EXIT_DISAGREE

    if args.format == "json":
        sys.stdout.write(oracle.dumps(doc))
    elif args.format == "csv":
        sys.stdout.write(_verify_csv(reports))
    else:
        for adj in adjudications:
            policies = ", ".join(
                f"{name}={v['value']}{'*' if v['matches'] else ''}" for name, v in adj["policies"].items()
            )
            print(f"tricrucial next k={adj['k']} l={adj['l']} n={adj['n']}: brute={adj['brute_count']}; {policies}")
        s = doc["summary"]
        print(
            f"{s['cells']} cells: {s['agree']} agree, {s['formula_na']} without formula, "
            f"{s['disagree']} disagree ({s['documented']} documented), {s['bound_anomalies']} bound anomalies"
        )
    return EXIT_OK if ok else EXIT_DISAGREE


def _parse_perm(text: str):
    try:
        values = [int(v) for v in text.replace(" ", "").split(",") if v != ""]
    except ValueError:
        raise UsageError(f"not a permutation: {text!r} (expected comma-separated integers)") from None
    try:
        return as_permutation(values)
    except CrucialPermError:
        raise UsageError(f"not a permutation: {text!r} (values must be 1..n, each once)") from None


def cmd_rsk(args) -> int:
    pair = rsk(_parse_perm(args.perm))
    if args.format == "json":
        sys.stdout.write(oracle.dumps({
            "perm": list(_parse_perm(args.perm)),
            "p": [list(r) for r in pair.P.rows],
            "q": [list(r) for r in pair.Q.rows],
            "shape": list(pair.shape),
        }))
    elif args.format == "csv":
        raise UsageError("rsk supports human and json output only")
    else:
        print(f"P: {pair.P}")
        print(f"Q: {pair.Q}")
    return EXIT_OK


def cmd_syt(args) -> int:
    try:
        shape = as_shape(int(v) for v in args.shape.split(","))
    except ValueError as exc:
        raise UsageError(f"bad shape {args.shape!r}: {exc}") from None
    predicates = []
    if args.constraint != "none":
        if args.k is None or args.ell is None:
            raise UsageError(f"--constraint {args.constraint} needs --k and --l")
        params = Params(args.k, args.ell)
        if args.constraint in ("rowchain", "both"):
            predicates.append(lambda t: has_row_chain(t, params))
        if args.constraint in ("colchain", "both"):
            predicates.append(lambda t: has_col_chain(t, params))
    tabs = (t for t in enumerate_syt(shape) if all(p(t) for p in predicates))
    if args.list:
        found = list(tabs)
        if args.format == "json":
            sys.stdout.write(oracle.dumps([[list(r) for r in t.rows] for t in found]))
        else:
            for t in found:
                print(t)
    else:
        total = sum(1 for _ in tabs)
        if args.format == "json":
            sys.stdout.write(oracle.dumps({"shape": list(shape), "constraint": args.constraint, "count": total}))
        else:
            print(total)
    return EXIT_OK


# --- parser -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("human", "json", "csv"), default="human")

    parser = argparse.ArgumentParser(prog="crucialperm", description="Count and verify (k,l)-crucial permutations.")
    sub = parser.add_subparsers(dest="command", required=True)

    def cell_args(p, with_n: bool):
        p.add_argument("--class", dest="cls", required=True, help="right, bicrucial, tricrucial or quadrocrucial")
        p.add_argument("--k", type=int, required=True)
        p.add_argument("--l", "--ell", dest="ell", type=int, required=True)
        if with_n:
            p.add_argument("--n", type=int, required=True)
        p.add_argument("--method", choices=METHODS, default="auto")
        p.add_argument("--workers", type=int, default=1, help="processes for brute force")

    p = sub.add_parser("count", parents=[common], help="count one (class, k, l, n) cell")
    cell_args(p, True)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("table", parents=[common], help="counts for every length in the support")
    cell_args(p, False)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", parents=[common], help="cross-validate brute force, tableaux and formulas")
    p.add_argument("--max-k", type=int, required=True)
    p.add_argument("--max-l", "--max-ell", dest="max_ell", type=int, required=True)
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--verbose", action="store_true", help="include per-partition brute-force counts")
    p.add_argument("--check", metavar="FILE", help="compare the JSON report with FILE byte for byte")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("rsk", parents=[common], help="show the RSK tableau pair of a permutation")
    p.add_argument("--perm", required=True, help="comma-separated one-line notation, e.g. 2,3,1")
    p.set_defaults(func=cmd_rsk)

    p = sub.add_parser("syt", parents=[common], help="count or list standard Young tableaux of a shape")
    p.add_argument("--shape", required=True, help="comma-separated row lengths, e.g. 3,2")
    p.add_argument("--constraint", choices=("none", "rowchain", "colchain", "both"), default="none")
    p.add_argument("--k", type=int)
    p.add_argument("--l", "--ell", dest="ell", type=int)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--count", action="store_true", help="print the number of tableaux (default)")
    mode.add_argument("--list", action="store_true", help="print each tableau")
    p.set_defaults(func=cmd_syt)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    for stream in (sys.stdout, sys.stderr):
        if hasattr(stream, "reconfigure"):
            stream.reconfigure(encoding="utf-8", line_buffering=True)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetError as exc:
        print(f"crucialperm: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (CrucialPermError, ValueError, OSError) as exc:
        print(f"crucialperm: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
