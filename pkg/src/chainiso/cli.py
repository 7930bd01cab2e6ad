"""Command-line interface: ``chainiso {table,seq,elements,classes,verify}``.

Family names: dp (partial isometries), odp (order-preserving), ddp
(order-decreasing), oddp (order-preserving and order-decreasing), ddp-star
(order-reversing and order-decreasing, plus every map of height <= 1).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from datetime import datetime, timezone
from typing import Callable, Optional, Sequence

from . import formulas
from .families import Family, FamilySlice, enumerate_family, fix_counts, height_counts, oracle_bound
from .verify import (
    CHECKS,
    FIX_FORMULAS,
    HEIGHT_FORMULAS,
    Bounds,
    all_passed,
    dstar_partition,
    run_all,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
LISTING_BOUND = 8

FAMILY_NAMES = [f.value for f in Family]
FORMATS = ["ascii", "csv", "json", "bfile"]


class UsageError(Exception):
    pass


# --- triangles ---------------------------------------------------------------


def triangle_row(family: Family, stat: str, n: int) -> list[int]:
    """Row ``n`` of the (family, statistic) triangle.

    Uses the closed forms where they exist and enumeration otherwise.
    """
    table = HEIGHT_FORMULAS if stat == "height" else FIX_FORMULAS
    if family in table:
        return [table[family](n, k) for k in range(n + 1)]
    return height_counts(family, n) if stat == "height" else fix_counts(family, n)


def triangle(family: Family, stat: str, max_n: int) -> list[list[int]]:
    return [triangle_row(family, stat, n) for n in range(max_n + 1)]


def enumerated_row(family: Family, stat: str, n: int) -> list[int]:
    return height_counts(family, n) if stat == "height" else fix_counts(family, n)


SEQUENCES: dict[str, Callable[[int], int]] = {
    "order-odp": formulas.order_odp,
    "order-oddp": formulas.order_oddp,
    "order-ddp": formulas.order_ddp,
    "order-ddp-recurrence": formulas.order_ddp_recurrence,
    "order-ddpstar": formulas.order_ddpstar,
    "dclass-total-odp": formulas.dclass_total_odp,
    "dstar-total-oddp": formulas.dstar_total_oddp,
    "dstar-total-ddp": formulas.dstar_total_ddp,
}

TRIANGLES: dict[str, tuple[Family, str]] = {
    "height-odp": (Family.ODP, "height"),
    "height-oddp": (Family.ODDP, "height"),
    "fix-oddp": (Family.ODDP, "fix"),
    "height-ddp": (Family.DDP, "height"),
    "fix-ddp": (Family.DDP, "fix"),
    "height-ddpstar": (Family.DDP_STAR, "height"),
}

# OEIS entries the counts were recorded under
OEIS_ALIASES = {
    "a184049": "height-oddp",
    "a184050": "fix-oddp",
    "a184051": "fix-ddp",
    "a184052": "order-ddp",
}


def series_terms(series: str, max_n: int, offset: int = 0) -> list[tuple[int, int]]:
    """``(index, value)`` pairs for a sequence or a row-major triangle.

    Sequences give ``a(n)`` for ``offset <= n <= max_n``. Triangles are read
    by rows ``0 .. max_n`` and numbered from ``offset``.
    """
    name = OEIS_ALIASES.get(series.lower(), series.lower())
    if name in SEQUENCES:
        if max_n < offset:
            raise UsageError(f"--max-n ({max_n}) must be at least --offset ({offset})")
        fn = SEQUENCES[name]
        return [(n, fn(n)) for n in range(offset, max_n + 1)]
    if name in TRIANGLES:
        family, stat = TRIANGLES[name]
        flat = [v for row in triangle(family, stat, max_n) for v in row]
        return list(enumerate(flat, start=offset))
    raise UsageError(f"unknown series {series!r}")


def render_bfile(terms: Sequence[tuple[int, int]]) -> str:
    return "".join(f"{i} {v}\n" for i, v in terms)


def render_triangle(rows: list[list[int]], stat: str, fmt: str, offset: int = 0) -> str:
    width = len(rows)
    sums = [sum(r) for r in rows]
    if fmt == "bfile":
        return render_bfile(list(enumerate((v for r in rows for v in r), start=offset)))
    if fmt == "json":
        data = [{"n": n, "values": r, "sum": s} for n, (r, s) in enumerate(zip(rows, sums))]
        return json.dumps({"statistic": stat, "rows": data}) + "\n"
    if fmt == "csv":
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["n", *range(width), "sum"])
        for n, (r, s) in enumerate(zip(rows, sums)):
            writer.writerow([n, *r, *[""] * (width - len(r)), s])
        return out.getvalue()
    label = "n\\p" if stat == "height" else "n\\m"
    cell = max(len(str(v)) for r in rows for v in r)
    cell = max(cell, len(str(width - 1)))
    lead = max(len(label), len(str(width - 1)))
    total = max(len("sum"), *(len(str(s)) for s in sums))
    head = f"{label:>{lead}} | " + " ".join(f"{k:>{cell}}" for k in range(width))
    lines = [f"{head} | {'sum':>{total}}", "-" * (len(head) + 3 + total)]
    for n, (r, s) in enumerate(zip(rows, sums)):
        cells = [f"{v:>{cell}}" for v in r] + [" " * cell] * (width - len(r))
        lines.append(f"{n:>{lead}} | " + " ".join(cells) + f" | {s:>{total}}")
    return "\n".join(lines) + "\n"


# --- subcommands ----------------------------------------------------------------


def cmd_table(args) -> int:
    family = Family.parse(args.family)
    if args.max_n < 0:
        raise UsageError("--max-n must be non-negative")
    rows = triangle(family, args.stat, args.max_n)
    if args.check:
        bound = oracle_bound()
        for n in range(min(args.max_n, bound) + 1):
            counted = enumerated_row(family, args.stat, n)
            if counted != rows[n]:
                print(f"mismatch at n={n}: formula {rows[n]} != enumeration {counted}",
                      file=sys.stderr)
                return EXIT_FAIL
    sys.stdout.write(render_triangle(rows, args.stat, args.format, args.offset))
    return EXIT_OK


def cmd_seq(args) -> int:
    terms = series_terms(args.series, args.max_n, args.offset)
    fmt = args.format
    if fmt == "bfile":
        out = render_bfile(terms)
    elif fmt == "json":
        out = json.dumps([{"index": i, "value": v} for i, v in terms]) + "\n"
    elif fmt == "csv":
        out = "index,value\n" + "".join(f"{i},{v}\n" for i, v in terms)
    else:
        out = ", ".join(str(v) for _, v in terms) + "\n"
    sys.stdout.write(out)
    return EXIT_OK


def cmd_elements(args) -> int:
    if args.n > args.limit:
        raise UsageError(f"listing limited to n <= {args.limit} (got {args.n}); see --limit")
    if args.n < 0:
        raise UsageError("--n must be non-negative")
    elements = sorted(
        enumerate_family(FamilySlice(Family.parse(args.family), args.n, args.height)),
        key=lambda a: (a.height, a.dom, a.img),
    )
    if args.format == "json":
        out = "".join(
            json.dumps({"n": a.n, "dom": list(a.dom), "img": list(a.img)}) + "\n"
            for a in elements
        )
    else:
        out = "\n\n".join(str(a) for a in elements) + "\n"
    sys.stdout.write(out)
    return EXIT_OK


CLASS_FORMULAS = {
    Family.ODDP: (formulas.dstar_count_oddp, formulas.dstar_total_oddp),
    Family.DDP: (formulas.dstar_count_ddp, formulas.dstar_total_ddp),
}


def cmd_classes(args) -> int:
    family = Family.parse(args.family)
    per_height_fn, total_fn = CLASS_FORMULAS[family]
    n = args.n
    if n < 0:
        raise UsageError("--n must be non-negative")
    counts = {p: per_height_fn(n, p) for p in range(n + 1)}
    result = {"family": family.value, "n": n, "total": total_fn(n)}
    if args.per_height:
        result["per_height"] = counts
    status = EXIT_OK
    if args.oracle:
        part = dstar_partition(family, n, bound=args.bound)
        oracle_counts = {p: part.per_height.get(p, 0) for p in range(n + 1)}
        result["oracle_total"] = part.class_count
        if args.per_height:
            result["oracle_per_height"] = oracle_counts
        result["match"] = oracle_counts == counts and part.class_count == result["total"]
        if not result["match"]:
            status = EXIT_FAIL
    if args.format == "json":
        sys.stdout.write(json.dumps(result) + "\n")
        return status
    lines = [f"family {family.value}, n = {n}"]
    if args.per_height:
        for p, c in counts.items():
            extra = f"  (union-find {result['oracle_per_height'][p]})" if args.oracle else ""
            lines.append(f"height {p}: {c}{extra}")
    lines.append(f"total: {result['total']}")
    if args.oracle:
        lines.append(f"union-find total: {result['oracle_total']}")
        lines.append("match" if result["match"] else "MISMATCH")
    sys.stdout.write("\n".join(lines) + "\n")
    return status


def cmd_verify(args) -> int:
    checks = None
    if args.checks:
        checks = [c.strip() for c in args.checks.split(",") if c.strip()]
    bounds = Bounds()
    for name in ("naive", "enumeration", "partition", "closure", "structure"):
        value = getattr(args, f"{name}_bound")
        if value is not None:
            setattr(bounds, name, value)
    try:
        reports = run_all(args.max_n, bounds=bounds, checks=checks, workers=args.workers)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    ok = all_passed(reports)
    stamp = datetime.now(timezone.utc).isoformat(timespec="seconds")
    if args.format == "json":
        doc = {"max_n": args.max_n, "passed": ok, "reports": [r.to_dict() for r in reports]}
        if not args.no_header:
            doc = {"generated": stamp, **doc}
        sys.stdout.write(json.dumps(doc) + "\n")
    else:
        lines = [] if args.no_header else [f"# chainiso verify, generated {stamp}"]
        for r in reports:
            params = " ".join(f"{k}={v}" for k, v in r.params.items())
            line = f"{'PASS' if r.passed else 'FAIL'} {r.name} [{params}]"
            if r.details:
                line += " " + " ".join(f"{k}={v}" for k, v in r.details.items()
                                       if not k.startswith("products_"))
            lines.append(line.rstrip())
            if not r.passed:
                lines.append(f"    counterexample: {json.dumps(r.counterexample)}")
        lines.append(f"{sum(r.passed for r in reports)}/{len(reports)} checks passed")
        sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK if ok else EXIT_FAIL


# --- parser -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chainiso",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table", help="height or fix triangle with row sums")
    p.add_argument("--family", choices=FAMILY_NAMES, required=True)
    p.add_argument("--stat", choices=["height", "fix"], default="height")
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--format", choices=FORMATS, default="ascii")
    p.add_argument("--offset", type=int, default=0, help="first b-file index")
    p.add_argument("--check", action="store_true",
                   help="compare rows against enumeration up to the oracle bound")
    p.set_defaults(func=cmd_table)

    names = sorted([*SEQUENCES, *TRIANGLES, *(a.upper() for a in OEIS_ALIASES)])
    p = sub.add_parser("seq", help="a sequence or a row-major triangle",
                       description="series: " + ", ".join(names))
    p.add_argument("--series", required=True, metavar="NAME")
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--offset", type=int, default=0)
    p.add_argument("--format", choices=FORMATS, default="ascii")
    p.set_defaults(func=cmd_seq)

    p = sub.add_parser("elements", help="list the maps of a family")
    p.add_argument("--family", choices=FAMILY_NAMES, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--height", type=int)
    p.add_argument("--format", choices=["ascii", "json"], default="ascii")
    p.add_argument("--limit", type=int, default=LISTING_BOUND)
    p.set_defaults(func=cmd_elements)

    p = sub.add_parser("classes", help="D*-class counts")
    p.add_argument("--family", choices=["oddp", "ddp"], required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--per-height", action="store_true")
    p.add_argument("--oracle", action="store_true", help="also count by union-find")
    p.add_argument("--bound", type=int, default=12, help="largest n for --oracle")
    p.add_argument("--format", choices=["ascii", "json"], default="ascii")
    p.set_defaults(func=cmd_classes)

    p = sub.add_parser("verify", help="run the cross-validation harness")
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--checks", help="comma-separated subset of: " + ", ".join(CHECKS))
    p.add_argument("--format", choices=["ascii", "json"], default="ascii")
    p.add_argument("--no-header", action="store_true")
    p.add_argument("--workers", type=int, default=1)
    for name in ("naive", "enumeration", "partition", "closure", "structure"):
        p.add_argument(f"--{name}-bound", type=int)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"chainiso: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
