"""Command-line front end.

Subcommands:

    eval     closed-form evaluation of integral(p * g_hat)
    oracle   brute-force truncated quadrature of the same integral
    compare  both sides plus |difference| and a pass/fail verdict
    poisson  compact-support Poisson summation check
    bspline  inspect the B-spline family (pieces, probes)
    table    reproduce the built-in identity table

Reports go to stdout as JSON (default), CSV, or text; diagnostics go to
stderr.  Exit codes: 0 success, 1 internal numeric failure or a failed
identity table, 2 precondition violations (excluded points, parse errors,
malformed rationals, bad flags).  Every subcommand accepts --plot PATH to
render a matplotlib figure of the report next to the delimited output.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from fractions import Fraction

from . import __version__
from .engine import EvaluationResult, lobachevsky, mixed_parseval
from .kernels import ExcludedPointError, kernel_bspline, kernel_from_selector
from .oracle import (
    METHOD_BLOCK_AVERAGED,
    METHOD_PLAIN,
    oracle_compare,
    oracle_integral,
)
from .periodic import (
    ParseError,
    PeriodicFunction,
    constant,
    cosine,
    from_samples,
    parse_periodic,
    square_wave,
)
from .poisson import poisson_check
from .pwpoly import bspline, eval_limits, format_pieces, total_integral
from .quadrature import QuadratureError, integrate
from .rationals import parse_rational

EXIT_OK = 0
EXIT_NUMERIC = 1
EXIT_PRECONDITION = 2


# --------------------------------------------------------------------------
# input plumbing
# --------------------------------------------------------------------------

def _read_samples(path: str) -> list[complex]:
    values = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = [p.strip() for p in line.split(",")]
            try:
                re = float(parts[0])
                im = float(parts[1]) if len(parts) > 1 and parts[1] else 0.0
            except (ValueError, IndexError):
                raise ValueError(f"{path}:{lineno}: malformed sample {line!r}") from None
            values.append(complex(re, im))
    return values


def _load_integrand(args) -> PeriodicFunction:
    if bool(args.expr) == bool(args.samples):
        raise ValueError("need exactly one input source: --expr or --samples")
    period = parse_rational(args.period)
    if args.expr:
        jumps = [parse_rational(j) for j in args.jumps.split(",")] if args.jumps else None
        return parse_periodic(args.expr, period, jumps)
    return from_samples(_read_samples(args.samples), period)


def _emit(text: str) -> None:
    sys.stdout.write(text)
    if not text.endswith("\n"):
        sys.stdout.write("\n")


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


# --------------------------------------------------------------------------
# per-subcommand serialization
# --------------------------------------------------------------------------

def _emit_evaluation(result: EvaluationResult, fmt: str) -> None:
    if fmt == "json":
        _emit(json.dumps(result.to_json_dict(), indent=2))
    elif fmt == "csv":
        rows = [
            (t.n, str(t.node), t.coefficient.real, t.coefficient.imag,
             t.kernel_avg, t.contribution.real, t.contribution.imag)
            for t in result.terms
        ]
        rows.append(("TOTAL", "", "", "", "", result.value.real, result.value.imag))
        _emit(_csv_text(
            ("n", "node", "coeff_re", "coeff_im", "kernel_avg",
             "contribution_re", "contribution_im"),
            rows,
        ))
    else:
        lines = [
            f"kernel   : {result.kernel_name}",
            f"period   : {result.period}",
            f"value    : {result.value.real:.15g} + {result.value.imag:.15g}i",
            f"terms    : {len(result.terms)}",
        ]
        for t in result.terms:
            lines.append(
                f"  n={t.n:>4}  node={str(t.node):>8}  coeff={t.coefficient:.6g}"
                f"  kernel_avg={t.kernel_avg:.12g}  contribution={t.contribution:.6g}"
            )
        lines.append(f"note     : {result.normalization_note}")
        _emit("\n".join(lines))


def _emit_quadrature(report, fmt: str) -> None:
    if fmt == "json":
        _emit(json.dumps(report.to_json_dict(), indent=2))
    elif fmt == "csv":
        rows = [("VALUE", report.value.real, report.value.imag,
                 report.error_estimate, report.method,
                 report.truncation_radius, report.blocks)]
        order = [0] + [m for i in range(1, (report.blocks + 1) // 2 + 1)
                       for m in (i, -i)][: report.blocks - 1]
        rows += [
            (m, b.real, b.imag, "", "", "", "")
            for m, b in zip(order, report.block_values)
        ]
        _emit(_csv_text(
            ("block", "re", "im", "error_estimate", "method",
             "truncation_radius", "blocks"),
            rows,
        ))
    else:
        _emit(
            f"value          : {report.value.real:.15g} + {report.value.imag:.15g}i\n"
            f"method         : {report.method}\n"
            f"radius         : {report.truncation_radius:g} ({report.blocks} blocks)\n"
            f"error estimate : {report.error_estimate:.3e} "
            f"(quadrature {report.quadrature_error:.3e}, tail spread {report.tail_spread:.3e})"
        )


def _emit_comparison(report, fmt: str) -> None:
    if fmt == "json":
        _emit(json.dumps(report.to_json_dict(), indent=2))
    elif fmt == "csv":
        _emit(_csv_text(
            ("engine_re", "engine_im", "oracle_re", "oracle_im",
             "abs_diff", "tolerance", "passed"),
            [(report.engine.value.real, report.engine.value.imag,
              report.oracle.value.real, report.oracle.value.imag,
              report.difference, report.tolerance, report.passed)],
        ))
    else:
        verdict = "PASS" if report.passed else "FAIL"
        _emit(
            f"engine : {report.engine.value.real:.15g} + {report.engine.value.imag:.15g}i\n"
            f"oracle : {report.oracle.value.real:.15g} + {report.oracle.value.imag:.15g}i"
            f"  (method {report.oracle.method}, X = {report.oracle.truncation_radius:g})\n"
            f"diff   : {report.difference:.3e}  tolerance {report.tolerance:.3e}  [{verdict}]"
        )


def _emit_poisson(report, fmt: str) -> None:
    if fmt == "json":
        _emit(json.dumps(report.to_json_dict(), indent=2))
    elif fmt == "csv":
        _emit(_csv_text(
            ("xi", "rhs_re", "rhs_im", "lhs_re", "lhs_im", "M",
             "tail_estimate", "converged"),
            [(str(report.xi), report.rhs.real, report.rhs.imag,
              report.lhs_partial.real, report.lhs_partial.imag,
              report.M, report.tail_estimate, report.converged)],
        ))
    else:
        status = "converged" if report.converged else "NOT converged"
        _emit(
            f"xi            : {report.xi}\n"
            f"finite side   : {report.rhs.real:.15g} + {report.rhs.imag:.15g}i\n"
            f"series side   : {report.lhs_partial.real:.15g} + {report.lhs_partial.imag:.15g}i\n"
            f"M             : {report.M}\n"
            f"tail estimate : {report.tail_estimate:.3e}  [{status}]"
        )


# --------------------------------------------------------------------------
# subcommands
# --------------------------------------------------------------------------

def _cmd_eval(args) -> int:
    K = kernel_from_selector(args.kernel)
    p = _load_integrand(args)
    result = mixed_parseval(p, K, args.tol)
    _emit_evaluation(result, args.format)
    if args.plot:
        from . import plots

        plots.plot_evaluation(result, args.plot)
    return EXIT_OK


def _cmd_oracle(args) -> int:
    K = kernel_from_selector(args.kernel)
    p = _load_integrand(args)
    report = oracle_integral(p, K, args.radius, args.tol, args.method)
    _emit_quadrature(report, args.format)
    if args.plot:
        from . import plots

        plots.plot_quadrature(report, args.plot)
    return EXIT_OK


def _cmd_compare(args) -> int:
    K = kernel_from_selector(args.kernel)
    p = _load_integrand(args)
    report = oracle_compare(p, K, args.tol)
    _emit_comparison(report, args.format)
    if args.plot:
        from . import plots

        plots.plot_comparison(report, args.plot)
    if not report.passed:
        print(
            f"engine and oracle disagree by {report.difference:.3e} "
            f"(tolerance {report.tolerance:.3e})",
            file=sys.stderr,
        )
        return EXIT_NUMERIC
    return EXIT_OK


def _cmd_poisson(args) -> int:
    K = kernel_from_selector(args.kernel)
    xi = parse_rational(args.xi)
    report = poisson_check(K, xi, args.tol, args.max_terms)
    _emit_poisson(report, args.format)
    if args.plot:
        from . import plots

        # replay the partial sums at the final M for the figure
        M = report.M
        transform = K.transform
        xi_f = float(xi)
        running = complex(transform(xi_f))
        sums = [running]
        for m in range(1, M + 1):
            running += transform(m + xi_f) + transform(-m + xi_f)
            sums.append(running)
        plots.plot_poisson(report, sums, args.plot)
    if not report.converged:
        print(
            f"series side did not reach tolerance {args.tol:g} within "
            f"M = {args.max_terms}; best tail estimate {report.tail_estimate:.3e}",
            file=sys.stderr,
        )
    return EXIT_OK


def _cmd_bspline(args) -> int:
    B = bspline(args.k)
    payload = {
        "k": args.k,
        "support": [str(B.breakpoints[0]), str(B.breakpoints[-1])],
        "degree": B.degree(),
        "integral": str(total_integral(B)),
    }
    if args.at is not None:
        x = parse_rational(args.at)
        lim = eval_limits(B, x)
        payload["at"] = {
            "x": str(x),
            "left": str(lim.left),
            "right": str(lim.right),
            "avg": str(lim.avg),
        }
    if args.print_pieces:
        payload["pieces"] = format_pieces(B).splitlines()

    if args.format == "json":
        _emit(json.dumps(payload, indent=2))
    elif args.format == "csv":
        rows = []
        for (a, b), coeffs in zip(zip(B.breakpoints, B.breakpoints[1:]), B.pieces):
            rows.append((str(a), str(b), ";".join(str(c) for c in coeffs) or "0"))
        _emit(_csv_text(("interval_start", "interval_end", "coefficients"), rows))
    else:
        lines = [
            f"B-spline order {args.k}: support [{payload['support'][0]}, "
            f"{payload['support'][1]}], degree {payload['degree']}, "
            f"integral {payload['integral']}"
        ]
        if "at" in payload:
            at = payload["at"]
            lines.append(
                f"at x = {at['x']}: left {at['left']}, right {at['right']}, "
                f"avg {at['avg']}"
            )
        if args.print_pieces:
            lines.append(format_pieces(B))
        _emit("\n".join(lines))
    if args.plot:
        from . import plots

        plots.plot_bspline(B, args.plot, label=f"order-{args.k} B-spline")
    return EXIT_OK


def _identity_rows() -> list[dict]:
    """The built-in reproduction table.

    closed_form re-derives each value through the one-period reduction
    integral(f) - c * integral(f sin^2(pi x)) over [-1/2, 1/2], with c = 0
    for orders 1 and 2, c = 1/2 for order 3 and c = 2/3 for order 4.
    """
    specs = [
        ("dirichlet", 1, constant(1), 0.0, 500, METHOD_BLOCK_AVERAGED, 1e-3),
        ("fejer", 2, constant(1), 0.0, 200, METHOD_BLOCK_AVERAGED, 1e-5),
        ("cubic-constant", 3, constant(1), 0.5, 300, METHOD_PLAIN, 1e-6),
        ("cubic-cosine", 3, cosine(1), 0.5, 300, METHOD_PLAIN, 1e-6),
        ("quartic-constant", 4, constant(1), 2.0 / 3.0, 40, METHOD_PLAIN, 1e-6),
        ("quartic-square", 4, square_wave(1), 2.0 / 3.0, 40, METHOD_PLAIN, 1e-6),
    ]
    rows = []
    for name, k, p, c, X, method, tol in specs:
        engine = lobachevsky(p, k, 1e-10)
        oracle = oracle_integral(p, kernel_bspline(k), X, 1e-8, method)
        base, _ = integrate(lambda x: p(x), -0.5, 0.5, 1e-12,
                            split_points=[float(j) for j in p.jumps_in(Fraction(-1, 2), Fraction(1, 2))])
        if c:
            weighted, _ = integrate(
                lambda x: p(x) * math.sin(math.pi * x) ** 2, -0.5, 0.5, 1e-12,
                split_points=[float(j) for j in p.jumps_in(Fraction(-1, 2), Fraction(1, 2))])
        else:
            weighted = 0.0
        closed = base - c * weighted
        diff = abs(engine.value - oracle.value)
        rows.append({
            "identity": name,
            "k": k,
            "integrand": p.label,
            "engine": engine.value.real,
            "oracle": oracle.value.real,
            "closed_form": closed.real if isinstance(closed, complex) else float(closed),
            "abs_diff": diff,
            "closed_diff": abs(engine.value - closed),
            "tolerance": tol,
            "passed": diff <= tol and abs(engine.value - closed) <= 1e-9,
        })
    return rows


def _cmd_table(args) -> int:
    if args.name != "identities":
        raise ValueError(f"unknown table {args.name!r} (only 'identities' exists)")
    rows = _identity_rows()
    if args.format == "json":
        _emit(json.dumps({"table": "identities", "rows": rows}, indent=2))
    elif args.format == "csv":
        header = ("identity", "k", "integrand", "engine", "oracle",
                  "closed_form", "abs_diff", "tolerance", "passed")
        _emit(_csv_text(header, [tuple(r[h] for h in header) for r in rows]))
    else:
        lines = [
            f"{'identity':<18} {'k':>2} {'engine':>14} {'oracle':>14} "
            f"{'closed form':>14} {'|diff|':>10} {'tol':>8} verdict"
        ]
        for r in rows:
            lines.append(
                f"{r['identity']:<18} {r['k']:>2} {r['engine']:>14.10f} "
                f"{r['oracle']:>14.10f} {r['closed_form']:>14.10f} "
                f"{r['abs_diff']:>10.2e} {r['tolerance']:>8.0e} "
                f"{'PASS' if r['passed'] else 'FAIL'}"
            )
        _emit("\n".join(lines))
    if args.plot:
        from . import plots

        plots.plot_identity_table(rows, args.plot)
    if not all(r["passed"] for r in rows):
        print("identity table has failing rows", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


# --------------------------------------------------------------------------
# argument parsing
# --------------------------------------------------------------------------

def _add_integrand_options(sub) -> None:
    sub.add_argument("--expr", help="integrand as an expression in x (one period)")
    sub.add_argument("--samples", help="CSV file of samples, one `re[,im]` per line")
    sub.add_argument("--period", required=True,
                     help="period as p/q or a decimal with <= 12 fractional digits")
    sub.add_argument("--jumps", default="",
                     help="comma-separated jump locations in [-T/2, T/2]")


def _add_common(sub, *, plot_help: str) -> None:
    sub.add_argument("--format", choices=("json", "csv", "text"), default="json")
    sub.add_argument("--plot", metavar="PATH", default=None, help=plot_help)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lbk",
        description="Band-limited-kernel integrals of periodic functions: "
        "closed-form evaluation, brute-force validation, Poisson checks.",
    )
    parser.add_argument("--version", action="version", version=f"lbk {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    s = subs.add_parser("eval", help="closed-form evaluation")
    s.add_argument("--kernel", required=True,
                   help="kernel selector: sinc:k=<int>, jinc, j0 [:dilate=<rational>]")
    _add_integrand_options(s)
    s.add_argument("--tol", type=float, default=1e-9)
    _add_common(s, plot_help="render the term ledger as a figure")
    s.set_defaults(func=_cmd_eval)

    s = subs.add_parser("oracle", help="brute-force truncated quadrature")
    s.add_argument("--kernel", required=True)
    _add_integrand_options(s)
    s.add_argument("--radius", type=float, default=200.0, help="truncation radius X >= 10")
    s.add_argument("--tol", type=float, default=1e-8)
    s.add_argument("--method", choices=(METHOD_PLAIN, METHOD_BLOCK_AVERAGED),
                   default=METHOD_BLOCK_AVERAGED)
    _add_common(s, plot_help="render the cumulative block sums")
    s.set_defaults(func=_cmd_oracle)

    s = subs.add_parser("compare", help="engine and oracle side by side")
    s.add_argument("--kernel", required=True)
    _add_integrand_options(s)
    s.add_argument("--tol", type=float, default=1e-6)
    _add_common(s, plot_help="render oracle convergence against the engine value")
    s.set_defaults(func=_cmd_compare)

    s = subs.add_parser("poisson", help="compact-support Poisson summation check")
    s.add_argument("--kernel", required=True)
    s.add_argument("--xi", default="0", help="shift as a rational")
    s.add_argument("--tol", type=float, default=1e-8)
    s.add_argument("--max-terms", type=int, default=10**6)
    _add_common(s, plot_help="render the partial sums")
    s.set_defaults(func=_cmd_poisson)

    s = subs.add_parser("bspline", help="inspect the B-spline family")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--print-pieces", action="store_true",
                   help="dump exact pieces, one interval per line")
    s.add_argument("--at", default=None, help="probe eval_limits at this rational")
    _add_common(s, plot_help="render the spline curve")
    s.set_defaults(func=_cmd_bspline)

    s = subs.add_parser("table", help="built-in reproduction tables")
    s.add_argument("name", choices=("identities",))
    _add_common(s, plot_help="render |engine - oracle| bars per identity")
    s.set_defaults(func=_cmd_table)

    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse already printed usage; normalize its code (2 for bad flags)
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ParseError, ExcludedPointError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except QuadratureError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ZeroDivisionError as exc:
        print(f"numeric failure: division by zero while evaluating ({exc})",
              file=sys.stderr)
        return EXIT_NUMERIC


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
