"""Command-line front end."""

from __future__ import annotations

import argparse
import logging
import sys
import warnings

from . import __version__
from .errors import CrossCheckError, LabError
from .lattice_sums import c_constant_direct, c_constant_ewald
from .oscillatory.coefficients import q_polynomial, quadruple
from .oscillatory.series import eval_ok, main_formula
from .radial_counts import SqrtRadius, build_table, get_table
from .reporting import emit
from .reporting.asymptotics import POINTS_PER_WINDOW, asymptotics_report
from .reporting.figure import COLUMNS, figure_pipeline
from .reporting.suite import PROFILES, run_suite
from .smeared.bump import make_bump
from .smeared.fourier import fourier_check
from .smeared.pairings import pair_counting, verify_delta_identity, verify_Nd_identity
from .step_calculus import eval_exact, eval_quadrature
from .summation import set_default_workers

log = logging.getLogger("gauss_sphere")


def _radius(text: str) -> SqrtRadius:
    try:
        return SqrtRadius.parse(text)
    except LabError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _moments(text: str) -> list[int]:
    if not text:
        return []
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad moment list {text!r}") from exc


def _write(args, record=None, header=None, rows=None, default="json") -> None:
    mode = args.emit or default
    with emit.sink(args.out) as fh:
        if mode == "csv":
            if rows is None:
                header, rows = list(record), [list(record.values())]
            fh.write(emit.to_csv(header, rows))
        else:
            if record is None:
                record = [dict(zip(header, r)) for r in rows]
            fh.write(emit.to_json(record))


def _bounded(bv) -> dict:
    return {"value": bv.value, "bound": bv.bound, "terms_used": bv.terms_used}


# -- subcommands --------------------------------------------------------------


def cmd_counts(args) -> int:
    t = build_table(args.dim, args.max_n)
    rows = [[n, int(t.counts[n]), int(t.cumulative[n])] for n in range(t.max_n + 1)]
    _write(args, header=["n", "r", "cumulative"], rows=rows, default="csv")
    return 0


def cmd_iterated(args) -> int:
    rec = {"k": args.k, "sigma2": str(args.sigma2), "value": eval_exact(args.k, args.sigma2)}
    if args.oracle == "on":
        rec["oracle_value"] = eval_quadrature(args.k, args.sigma2)
    _write(args, rec)
    return 0


def cmd_series(args) -> int:
    r = args.sigma2
    rec = {
        "k": args.k,
        "sigma2": str(r),
        "sigma": r.sigma,
        "o_k": _bounded(eval_ok(args.k, r, args.terms)),
        "main_formula": _bounded(main_formula(args.k, r, args.terms)),
    }
    if r.floor_square() <= 10**6:
        rec["exact"] = eval_exact(args.k, r)
    _write(args, rec)
    return 0


def cmd_coeffs(args) -> int:
    header = ["k", "alpha", "beta", "gamma", "delta", "Q"]
    rows = []
    for k in range(args.k_min, args.k_max + 1):
        q = quadruple(k)
        poly = " ".join(str(c) for c in q_polynomial(k).coefficients)
        rows.append([k, q.alpha, q.beta, q.gamma, q.delta, poly])
    _write(args, header=header, rows=rows)
    return 0


def cmd_constants(args) -> int:
    if args.method == "direct":
        c = c_constant_direct(args.j, args.terms)
    else:
        c = c_constant_ewald(args.j, args.target)
    _write(args, {"j": c.j, "value": c.value, "bound": c.bound, "method": c.method})
    return 0


def cmd_pair(args) -> int:
    bump = make_bump(args.a, args.b, args.kill_moments)
    table = get_table(args.dim, int(args.b * args.b) + 1)
    value, err = pair_counting(table, args.k, bump, with_error=True)
    rec = {"dimension": args.dim, "k": args.k, "a": args.a, "b": args.b, "value": value, "quad_error": err}
    _write(args, rec)
    return 0


def _report(args, fn) -> int:
    bump = make_bump(args.a, args.b, args.kill_moments)
    report = fn(args.dim, bump, args.terms)
    _write(args, report.to_dict())
    return 0 if report.passed else 1


def cmd_verify_delta(args) -> int:
    return _report(args, verify_delta_identity)


def cmd_verify_nd(args) -> int:
    return _report(args, verify_Nd_identity)


def cmd_fourier(args) -> int:
    report = fourier_check(args.tau, args.eps, args.terms, args.rmax)
    _write(args, report.to_dict())
    return 0 if report.passed else 1


def cmd_figure(args) -> int:
    rows = figure_pipeline(args.lambda_max, args.terms)
    body = [list(r.as_tuple()) for r in rows]
    _write(args, header=list(COLUMNS), rows=body, default="csv")
    return 0


def cmd_asymptotics(args) -> int:
    report = asymptotics_report(args.k, args.sigma_max, args.points)
    if (args.emit or "json") == "csv":
        header = ["lo", "hi", "points", "max_weighted", "max_probe"]
        rows = [[w.lo, w.hi, w.points, w.max_weighted, w.max_probe] for w in report.windows]
        _write(args, header=header, rows=rows)
    else:
        _write(args, report.to_dict())
    return 0 if report.stable else 1


def cmd_suite(args) -> int:
    code, summary = run_suite(args.profile, flip_beta=args.flip_beta)
    for r in summary["results"]:
        status = "PASS" if r["passed"] else "FAIL"
        print(f"[{status}] {r['ident']}: {r['title']} ({r['elapsed']:.2f} s)", file=sys.stderr)
    if (args.emit or "json") == "csv":
        header = ["ident", "title", "passed", "elapsed", "limit"]
        rows = [[r[h] for h in header] for r in summary["results"]]
        _write(args, header=header, rows=rows)
    else:
        _write(args, summary)
    return code


# -- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--emit", choices=("csv", "json"), help="output format")
    common.add_argument("--out", help="output path (default: stdout)")
    common.add_argument("--threads", type=int, default=1, help="workers for chunked reductions")
    common.add_argument("--profile", choices=sorted(PROFILES), default="quick")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(
        prog="gauss-sphere",
        description="Lattice-point counts in 3-balls, their iterated integrals and the series behind them.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=fn)
        return p

    p = add("counts", cmd_counts, "representation numbers r_d(n) and cumulative counts")
    p.add_argument("--dim", type=int, choices=(1, 2, 3), default=3)
    p.add_argument("--max-n", type=int, required=True)

    p = add("iterated", cmd_iterated, "exact N_{3,k}(sigma)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--sigma2", type=_radius, required=True, help='sigma^2 as "p/q"')
    p.add_argument("--oracle", choices=("off", "on"), default="off")

    p = add("series", cmd_series, "o_k and the main formula with rigorous bounds")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--sigma2", type=_radius, required=True)
    p.add_argument("--terms", type=int, default=10**4)

    p = add("coeffs", cmd_coeffs, "exact quadruples and Q_k polynomials")
    p.add_argument("--k-min", type=int, default=0)
    p.add_argument("--k-max", type=int, default=8)

    p = add("constants", cmd_constants, "lattice-sum constants C_j")
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--method", choices=("direct", "ewald"), default="ewald")
    p.add_argument("--terms", type=int, default=10**5)
    p.add_argument("--target", type=float, default=1e-9)

    def bump_args(p):
        p.add_argument("--dim", type=int, choices=(1, 2, 3), default=3)
        p.add_argument("--a", type=float, required=True)
        p.add_argument("--b", type=float, required=True)
        p.add_argument("--kill-moments", type=_moments, default=[], help="e.g. 1,2,3,4")

    p = add("pair", cmd_pair, "pair a bump with N_{d,k}")
    bump_args(p)
    p.add_argument("--k", type=int, default=0)

    for name, fn in (("verify-delta", cmd_verify_delta), ("verify-nd", cmd_verify_nd)):
        p = add(name, fn, "smeared Poisson-summation identity")
        bump_args(p)
        p.add_argument("--terms", type=int, default=1000)

    p = add("fourier", cmd_fourier, "damped Fourier-side identity")
    p.add_argument("--tau", type=float, default=1.0)
    p.add_argument("--eps", type=float, default=0.2)
    p.add_argument("--terms", type=int, default=10**4)
    p.add_argument("--rmax", type=float, default=60.0)

    p = add("figure", cmd_figure, "o_4 figure data on sigma^2 = lambda/8")
    p.add_argument("--lambda-max", type=int, default=1600)
    p.add_argument("--terms", type=int, default=10**4)

    p = add("asymptotics", cmd_asymptotics, "windowed residual maxima")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--sigma-max", type=float, required=True)
    p.add_argument("--points", type=int, default=POINTS_PER_WINDOW)

    p = add("suite", cmd_suite, "run all acceptance criteria and invariants")
    p.add_argument(
        "--flip-beta",
        action="store_true",
        help="use beta_k = -Im[i^k] instead of the recursion (expected to fail)",
    )
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    set_default_workers(args.threads)
    if not args.verbose:
        warnings.simplefilter("ignore", UserWarning)
    try:
        return args.func(args)
    except CrossCheckError as exc:
        print(f"error: {exc}", file=sys.stderr)
        if exc.row is not None:
            print(f"offending row: {exc.row}", file=sys.stderr)
        return 2
    except LabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
