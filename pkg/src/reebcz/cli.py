"""``reebcz`` command line: index tables, rank tables, verification sweeps, lens comparison."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import geometry as geo
from .errors import DegenerateOrbitError, InvalidCertificateError, RegimeError, SamplingError
from .exact import as_rational, rational_to_str
from .geometry import Family, LinkParams
from .index import choose_eps, cz_link_closed_form, cz_link_simplified, cz_link_via_crossing
from .lens import lens_orbit_table
from .ranks import check_thm_pattern, tally_ranks
from .verify import EXIT_DEGENERATE, EXIT_ENVIRONMENT, EXIT_MISMATCH, EXIT_OK, SCHEMA, RunConfig, run_verification

CZ_COLUMNS = ["family", "N", "mu_crossing", "mu_closed", "mu_simplified", "homotopy_class", "contractible"]


def _eps_arg(text: str) -> str:
    if text.strip().lower() == "auto":
        return "auto"
    try:
        as_rational(text)
    except (TypeError, ValueError) as exc:
        raise argparse.ArgumentTypeError(f"expected p/q or 'auto', got {text!r}") from exc
    return text


def _rational_arg(text: str):
    try:
        return as_rational(text)
    except (TypeError, ValueError) as exc:
        raise argparse.ArgumentTypeError(f"expected a rational p/q, got {text!r}") from exc


def _positive_float(text: str) -> float:
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError("tolerances must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=2, help="the singularity is A_n (default 2)")
    common.add_argument("--eps", type=_eps_arg, default="1/1000", help="perturbation as p/q, or 'auto'")
    common.add_argument("--n-max", type=int, default=100, help="largest certified iterate (default 100)")
    common.add_argument("--degree-max", type=int, default=41, help="degree window [0, D] (default 41)")
    common.add_argument("--format", choices=["md", "csv", "json"], default="md")

    parser = argparse.ArgumentParser(prog="reebcz", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("cz-table", parents=[common], help="index of every iterate by both methods")
    ranks = sub.add_parser("sh-ranks", parents=[common], help="graded generator counts")
    ranks.add_argument("--shift", type=int, default=0, help="global degree shift (default 0)")

    ver = sub.add_parser("verify", parents=[common], help="sampled identity checks and exact certificates")
    ver.add_argument("--samples", type=int, default=1000)
    ver.add_argument("--seed", type=int, default=0)
    ver.add_argument("--tol-identity", type=_positive_float, default=geo.TOL_IDENTITY)
    ver.add_argument("--tol-onlink", type=_positive_float, default=geo.TOL_ONLINK)
    ver.add_argument("--tol-ode", type=_positive_float, default=geo.TOL_ODE)

    lens = sub.add_parser("lens-compare", parents=[common], help="link and lens rank tables side by side")
    lens.add_argument("--a1", type=_rational_arg, default=as_rational(1))
    lens.add_argument("--a2", type=_rational_arg, default=as_rational("1001/1000"))
    return parser


def _params(args) -> LinkParams:
    eps = choose_eps(args.n, args.n_max) if args.eps == "auto" else as_rational(args.eps)
    return LinkParams(args.n, eps, args.n_max)


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


# -- commands -------------------------------------------------------------------


def cz_rows(params: LinkParams, n_max: int) -> list[dict]:
    rows = []
    for fam in (Family.MINUS, Family.PLUS):
        for N in range(1, n_max + 1):
            try:
                simplified = cz_link_simplified(params, fam, N)
            except RegimeError:
                simplified = None
            rows.append(
                {
                    "family": fam.value,
                    "N": N,
                    "mu_crossing": cz_link_via_crossing(params, fam, N),
                    "mu_closed": cz_link_closed_form(params, fam, N),
                    "mu_simplified": simplified,
                    "homotopy_class": N % (params.n + 1),
                    "contractible": N % (params.n + 1) == 0,
                }
            )
    return rows


def cmd_cz_table(args) -> int:
    params = _params(args)
    rows = cz_rows(params, args.n_max)
    if args.format == "json":
        doc = {"schema": SCHEMA, "n": params.n, "eps": rational_to_str(params.eps), "rows": rows}
        _emit(json.dumps(doc, indent=2))
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=CZ_COLUMNS, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({**r, "mu_simplified": "" if r["mu_simplified"] is None else r["mu_simplified"]})
        _emit(buf.getvalue())
    else:
        lines = [f"n = {params.n}, eps = {rational_to_str(params.eps)}", ""]
        lines.append("| " + " | ".join(CZ_COLUMNS) + " |")
        lines.append("|" + "---|" * len(CZ_COLUMNS))
        for r in rows:
            cells = ["-" if r[c] is None else str(r[c]) for c in CZ_COLUMNS]
            lines.append("| " + " | ".join(cells) + " |")
        _emit("\n".join(lines))
    bad = [r for r in rows if r["mu_crossing"] != r["mu_closed"]]
    if bad:
        print(f"crossing count and closed form disagree on {len(bad)} rows", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_sh_ranks(args) -> int:
    params = _params(args)
    table = tally_ranks(params, args.degree_max, shift=args.shift)
    try:
        ok = check_thm_pattern(table, params.n)
    except InvalidCertificateError as exc:
        print(str(exc), file=sys.stderr)
        ok = False
    if args.format == "json":
        _emit(json.dumps({"schema": SCHEMA, **table.to_json(), "pattern_ok": ok}, indent=2))
    elif args.format == "csv":
        _emit(table.to_csv())
    else:
        _emit(table.to_markdown() + f"\npattern: {'OK' if ok else 'MISMATCH'}")
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_verify(args) -> int:
    cfg = RunConfig(
        n=args.n,
        eps=args.eps,
        n_max=args.n_max,
        degree_max=args.degree_max,
        samples=args.samples,
        seed=args.seed,
        tol_identity=args.tol_identity,
        tol_onlink=args.tol_onlink,
        tol_ode=args.tol_ode,
    )
    report = run_verification(cfg)
    if args.format == "json":
        _emit(json.dumps(report.to_json(), indent=2))
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["identity", "count", "passed", "worst", "threshold", "bound"])
        for name, s in sorted(report.asserted.items()):
            w.writerow([name, s.count, s.passed, repr(s.worst), s.threshold, s.bound])
        _emit(buf.getvalue())
    else:
        _emit(report.to_markdown())
    return report.exit_status


def cmd_lens_compare(args) -> int:
    link = tally_ranks(_params(args), args.degree_max)
    lens = lens_orbit_table(args.n, args.a1, args.a2, args.degree_max)
    equal = link.same_ranks(lens)
    if args.format == "json":
        doc = {"schema": SCHEMA, "link_table": link.to_json(), "lens_table": lens.to_json(), "equal": equal}
        _emit(json.dumps(doc, indent=2))
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["degree", "link_rank", "lens_rank"])
        for d in range(args.degree_max + 1):
            w.writerow([d, link.rank(d), lens.rank(d)])
        _emit(buf.getvalue())
    else:
        lines = ["| degree | link | lens |", "|---:|---:|---:|"]
        lines += [f"| {d} | {link.rank(d)} | {lens.rank(d)} |" for d in range(args.degree_max + 1)]
        lines.append(f"\nequal: {str(equal).lower()}")
        _emit("\n".join(lines))
    return EXIT_OK if equal else EXIT_MISMATCH


COMMANDS = {
    "cz-table": cmd_cz_table,
    "sh-ranks": cmd_sh_ranks,
    "verify": cmd_verify,
    "lens-compare": cmd_lens_compare,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except DegenerateOrbitError as exc:
        where = f" ({getattr(exc.family, 'value', exc.family)}, N={exc.N})" if exc.N is not None else ""
        print(f"degenerate parameters{where}: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except SamplingError as exc:
        print(f"sampling failed: {exc}", file=sys.stderr)
        return EXIT_ENVIRONMENT
    except ValueError as exc:
        print(f"invalid parameters: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE


if __name__ == "__main__":
    sys.exit(main())
