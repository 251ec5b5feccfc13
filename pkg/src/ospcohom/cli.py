"""Command line front end.

Exit codes: 0 success, 1 verification failure, 2 parse or usage error,
3 unstabilized truncation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence

from . import classify
from .cocycles import (
    catalogue,
    odd_weights,
    predicted_dims,
    resonance_label,
    verify_theorem,
)
from .cohomology import h1_dims
from .contact import TABLE, check_table, table_mismatches
from .syntax import ParseError, format_rat, parse_rat

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_UNSTABLE = 0, 1, 2, 3

FIELDS = ["lambda", "mu", "dim_even", "dim_odd", "label", "N", "W", "stabilized"]
NOTE_N = "N default: max(ceil(2(mu-lambda)+6), 8); stabilization re-run at N+2"


def _rat(text: str) -> Fraction:
    try:
        return parse_rat(text)
    except ParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _rat_list(text: str) -> List[Fraction]:
    """``a,b,c`` or ``start:stop:step`` (inclusive)."""
    text = text.strip()
    if not text:
        return []
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise argparse.ArgumentTypeError(f"range {text!r} at position 0 must be start:stop:step")
        offsets = [0, len(parts[0]) + 1, len(parts[0]) + len(parts[1]) + 2]
        vals = []
        for part, off in zip(parts, offsets):
            try:
                vals.append(parse_rat(part))
            except ParseError as exc:
                raise argparse.ArgumentTypeError(
                    f"bad rational {part!r} at position {off} of {text!r}"
                ) from exc
        start, stop, step = vals
        if step <= 0:
            raise argparse.ArgumentTypeError(f"step must be positive in {text!r}")
        out = []
        v = start
        while v <= stop:
            out.append(v)
            v += step
        return out
    out = []
    pos = 0
    for part in text.split(","):
        try:
            out.append(parse_rat(part))
        except ParseError:
            raise argparse.ArgumentTypeError(
                f"bad rational {part!r} at position {pos} of {text!r}"
            ) from None
        pos += len(part) + 1
    return out


@lru_cache(maxsize=None)
def _report(lam: Fraction, mu: Fraction, N: Optional[int], W: Fraction):
    return h1_dims(lam, mu, N, W)


def _row(lam: Fraction, mu: Fraction, N: Optional[int], W: Fraction) -> Dict[str, object]:
    rep = _report(lam, mu, N, W)
    return {
        "lambda": format_rat(lam),
        "mu": format_rat(mu),
        "dim_even": rep.dim_even,
        "dim_odd": rep.dim_odd,
        "label": resonance_label(lam, mu),
        "N": rep.N,
        "W": format_rat(rep.W),
        "stabilized": rep.stabilized,
        "_ok": rep.dims == predicted_dims(lam, mu) and rep.offzero_exact,
    }


def _row_job(args):
    return _row(*args)


def _cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def render(rows: Sequence[Dict[str, object]], fmt: str, W: Fraction) -> str:
    public = [{k: r[k] for k in FIELDS} for r in rows]
    if fmt == "json":
        return json.dumps(public, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(FIELDS)
        for r in public:
            w.writerow([_cell(r[k]) for k in FIELDS])
        return buf.getvalue()
    cells = [FIELDS] + [[_cell(r[k]) for k in FIELDS] for r in public]
    widths = [max(len(c[i]) for c in cells) for i in range(len(FIELDS))]
    lines = [f"# W={format_rat(W)}; {NOTE_N}"]
    for c in cells:
        lines.append("  ".join(s.ljust(wd) for s, wd in zip(c, widths)).rstrip())
    return "\n".join(lines) + "\n"


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _rows_status(rows, check: bool) -> int:
    if check and not all(r["_ok"] for r in rows):
        return EXIT_FAIL
    if not all(r["stabilized"] for r in rows):
        return EXIT_UNSTABLE
    return EXIT_OK


def cmd_dims(args) -> int:
    row = _row(args.lam, args.mu, args.order, args.weight_window)
    _emit(render([row], args.format, args.weight_window), args.out)
    return _rows_status([row], args.check)


def cmd_sweep(args) -> int:
    cells = sorted((lam, d) for lam in args.lam for d in args.delta)
    jobs = [(lam, lam + d, args.order, args.weight_window) for lam, d in cells]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_row_job, jobs))
    else:
        rows = [_row_job(j) for j in jobs]
    _emit(render(rows, args.format, args.weight_window), args.out)
    return _rows_status(rows, args.check)


def cmd_verify(args) -> int:
    if args.k is not None:
        if args.k < 1:
            print("error: --k must be a positive integer", file=sys.stderr)
            return EXIT_USAGE
        lam, mu = odd_weights(args.k)
    elif args.lam is not None and args.mu is not None:
        lam, mu = args.lam, args.mu
    else:
        print("error: give --k or both --lambda and --mu", file=sys.stderr)
        return EXIT_USAGE
    v = verify_theorem(lam, mu, args.order, args.weight_window)
    if args.format == "json":
        text = json.dumps(
            {
                "lambda": format_rat(lam),
                "mu": format_rat(mu),
                "passed": v.passed,
                "dims": list(v.report.dims),
                "expected": list(v.expected),
                "generators": v.generators,
                "N": v.report.N,
                "problems": [{k: str(x) for k, x in p.items()} for p in v.problems],
            },
            indent=2,
        ) + "\n"
    else:
        text = v.summary() + "\n"
    _emit(text, args.out)
    return EXIT_OK if v.passed else EXIT_FAIL


def cmd_table_check(args) -> int:
    bad = table_mismatches()
    if bad:
        text = "table-check: FAIL\n" + "".join(f"  {b}\n" for b in bad)
    else:
        text = f"table-check: PASS ({len(TABLE)} relations, ad X_x weights -1, 0, 1, -1/2, 1/2)\n"
    _emit(text, args.out)
    return EXIT_OK if check_table() else EXIT_FAIL


def cmd_invariants(args) -> int:
    rep = classify.invariants_report(args.lam, args.mu, args.order)
    if args.format == "json":
        text = json.dumps(rep, indent=2) + "\n"
    else:
        k = "none" if rep["k"] is None else rep["k"]
        basis = "; ".join(rep["basis"]) or "-"
        text = f"lambda={rep['lambda']} mu={rep['mu']} k={k} dim={rep['dim']} basis: {basis}\n"
    _emit(text, args.out)
    return EXIT_OK


def cmd_catalogue(args) -> int:
    rows = [nc.row() for nc in catalogue(args.lam or (), args.k)]
    fields = ["name", "lambda", "mu", "parity", "order", "classical"]
    if args.format == "json":
        text = json.dumps(rows, indent=2) + "\n"
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(fields)
        for r in rows:
            w.writerow([_cell(r[f]) for f in fields])
        text = buf.getvalue()
    else:
        cells = [fields] + [[_cell(r[f]) for f in fields] for r in rows]
        widths = [max(len(c[i]) for c in cells) for i in range(len(fields))]
        text = "\n".join(
            "  ".join(s.ljust(wd) for s, wd in zip(c, widths)).rstrip() for c in cells
        ) + "\n"
    _emit(text, args.out)
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ospcohom", description="H^1 of osp(1|2) with coefficients in D_{lambda,mu}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, formats=("table", "csv", "json")):
        sp.add_argument("--order", type=int, default=None, help="order cap N")
        sp.add_argument("--weight-window", type=_rat, default=Fraction(3), help="weight window W")
        sp.add_argument("--format", choices=formats, default="table")
        sp.add_argument("--out", default=None, help="write output to FILE")

    sp = sub.add_parser("dims", help="H^1 dimensions at one point")
    sp.add_argument("--lambda", dest="lam", type=_rat, required=True)
    sp.add_argument("--mu", type=_rat, required=True)
    sp.add_argument("--check", action="store_true", help="fail if dims disagree with the resonance label")
    common(sp)
    sp.set_defaults(func=cmd_dims)

    sp = sub.add_parser("sweep", help="H^1 dimensions on a grid")
    sp.add_argument("--lambda", dest="lam", type=_rat_list, required=True,
                    help="list a,b,c or range start:stop:step")
    sp.add_argument("--delta", type=_rat_list, required=True, help="values of mu - lambda")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--check", action="store_true")
    common(sp)
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("verify", help="check the explicit cocycles and dimensions")
    sp.add_argument("--lambda", dest="lam", type=_rat, default=None)
    sp.add_argument("--mu", type=_rat, default=None)
    sp.add_argument("--k", type=int, default=None, help="shorthand for lambda=(1-k)/2, mu=k/2")
    common(sp, formats=("table", "json"))
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("table-check", help="verify the osp(1|2) commutation table")
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_table_check)

    sp = sub.add_parser("invariants", help="sl(2)-invariant bilinear maps h x F_lambda -> F_mu")
    sp.add_argument("--lambda", dest="lam", type=_rat, required=True)
    sp.add_argument("--mu", type=_rat, required=True)
    sp.add_argument("--order", type=int, default=None, help="derivative cap on f")
    sp.add_argument("--format", choices=("table", "json"), default="table")
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_invariants)

    sp = sub.add_parser("catalogue", help="list the named cocycles")
    sp.add_argument("--k", type=int, default=5, help="largest k")
    sp.add_argument("--lambda", dest="lam", type=_rat_list, default=None, help="diagonal weights")
    sp.add_argument("--format", choices=("table", "csv", "json"), default="table")
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_catalogue)
    return p


_VALUE_OPTS = {"--lambda", "--mu", "--delta", "--weight-window"}
_NEGATIVE = re.compile(r"^-\d")


def _join_negatives(argv: Sequence[str]) -> List[str]:
    """Rewrite ``--mu -1/2`` as ``--mu=-1/2`` so argparse does not read it as a flag."""
    out: List[str] = []
    it = iter(argv)
    for tok in it:
        if tok in _VALUE_OPTS:
            nxt = next(it, None)
            if nxt is not None and _NEGATIVE.match(nxt):
                out.append(f"{tok}={nxt}")
                continue
            out.append(tok)
            if nxt is not None:
                out.append(nxt)
            continue
        out.append(tok)
    return out


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    argv = _join_negatives(sys.argv[1:] if argv is None else list(argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_USAGE
    if getattr(args, "order", None) is not None and args.order < 0:
        print("error: --order must be non-negative", file=sys.stderr)
        return EXIT_USAGE
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
