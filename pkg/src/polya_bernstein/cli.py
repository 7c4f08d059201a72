"""Command-line front end: evaluate operators, run sup scans, verify the
inequality machinery, and compare error profiles.

Exit codes: 0 success / all checks passed, 1 verification failure, 2 usage
error.  Failure paths emit a machine-parsable JSON error object on stderr.
Identical invocations produce byte-identical JSON regardless of --workers.
"""

from __future__ import annotations

import csv
import json
import os
import sys

import click
import numpy as np

from . import analysis, operators
from .polya import AdmissibilityError
from .reports import GridSpec, dump_json, write_curves_csv

DEFAULT_POINTS = 10001
DEFAULT_C_SAMPLES = 21


def _parse_range(text: str) -> list[int]:
    """Inclusive range 'lo..hi', or a single integer."""
    if ".." in text:
        lo_s, hi_s = text.split("..", 1)
        lo, hi = int(lo_s), int(hi_s)
    else:
        lo = hi = int(text)
    if hi < lo:
        raise click.UsageError(f"empty range {text!r}")
    return list(range(lo, hi + 1))


def _resolve_workers(workers: int | None) -> int:
    if workers is None:
        env = os.environ.get("PB_WORKERS")
        workers = int(env) if env else (os.cpu_count() or 1)
    if workers < 1:
        raise click.UsageError(f"--workers must be >= 1, got {workers}")
    return workers


def _function(fn: str | None, fn_csv: str | None) -> operators.FunctionSpec:
    if (fn is None) == (fn_csv is None):
        raise click.UsageError("provide exactly one of --fn or --fn-csv")
    if fn_csv is not None:
        return operators.function_from_csv(fn_csv)
    return operators.builtin_function(fn)


def _emit(text: str, out: str | None) -> None:
    if out is None:
        click.echo(text, nl=False)
    else:
        with open(out, "w", newline="") as fh:
            fh.write(text)


@click.group()
def cli() -> None:
    """Urn-based Bernstein-type operators and their error-bound checks."""


@cli.command("eval")
@click.option("--op", "op", type=click.Choice(["bernstein", "rn", "polya"]), required=True)
@click.option("--fn", "fn", default=None, help="built-in function name")
@click.option("--fn-csv", "fn_csv", default=None, type=click.Path(exists=True),
              help="sampled-table function, CSV with header x,fx")
@click.option("--n", "n", type=int, required=True)
@click.option("--x", "x", type=float, default=None, help="single evaluation point")
@click.option("--c", "c", type=float, default=None, help="constant profile c (op=polya)")
@click.option("--grid-points", type=int, default=None, help="evaluate on a grid instead of --x")
@click.option("--out", "out", type=click.Path(), default=None, help="CSV output for grid mode")
def cmd_eval(op, fn, fn_csv, n, x, c, grid_points, out):
    """Evaluate an operator at a point, or over a grid (CSV x,fx,opx,error)."""
    f = _function(fn, fn_csv)
    if op == "polya":
        profile = operators.CProfile("constant", c) if c is not None else operators.CProfile("rn")
    elif op == "rn":
        profile = operators.CProfile("rn")
    else:
        profile = None
    if (x is None) == (grid_points is None):
        raise click.UsageError("provide exactly one of --x or --grid-points")
    if x is not None:
        if op == "bernstein":
            value = operators.bernstein_eval(f, n, x)
        else:
            value = operators.polya_operator_eval(f, n, x, profile)
        click.echo(repr(value))
        return
    xs = np.linspace(0.0, 1.0, grid_points)
    if op == "bernstein":
        curve = operators.bernstein_curve(f, n, xs)
    else:
        curve = operators.operator_curve(f, n, xs, profile)
    fx = np.asarray(f(xs))
    rows = zip(xs.tolist(), fx.tolist(), curve.tolist(), (curve - fx).tolist())
    if out is None:
        raise click.UsageError("grid mode requires --out")
    write_curves_csv(out, rows, header=("x", "fx", "opx", "error"))
    click.echo(f"wrote {grid_points} rows to {out}")


@cli.command("scan")
@click.option("--sikkema", "mode", flag_value="sikkema")
@click.option("--popoviciu", "mode", flag_value="popoviciu")
@click.option("--n", "n_range", required=True, help="n range lo..hi")
@click.option("--c-mode", type=click.Choice(["zero", "rn"]), default="zero", show_default=True)
@click.option("--fn", "fn", default=None)
@click.option("--fn-csv", "fn_csv", default=None, type=click.Path(exists=True))
@click.option("--op", "op", type=click.Choice(["bernstein", "rn"]), default="rn", show_default=True)
@click.option("--points", type=int, default=DEFAULT_POINTS, show_default=True)
@click.option("--out", "out", type=click.Path(), default=None, help="JSON report path (default stdout)")
@click.option("--curves-csv", type=click.Path(), default=None, help="per-n curve export (n,x,value)")
@click.option("--workers", type=int, default=None, help="parallel workers (env PB_WORKERS)")
def cmd_scan(mode, n_range, c_mode, fn, fn_csv, op, points, out, curves_csv, workers):
    """Sup scans: --sikkema for the bound function, --popoviciu for operator
    error/modulus ratios of a test function."""
    if mode is None:
        raise click.UsageError("select one of --sikkema or --popoviciu")
    ns = _parse_range(n_range)
    workers = _resolve_workers(workers)
    grid = GridSpec(points=points)
    if mode == "sikkema":
        report = analysis.scan_sup(ns, c_mode=c_mode, grid=grid, workers=workers)
        if curves_csv is not None:
            def rows():
                for n in ns:
                    xs = analysis._sym_scan_grid(n, grid)
                    vals = analysis.sikkema_curve(n, xs, c_mode)
                    for xi, vi in zip(xs.tolist(), vals.tolist()):
                        yield (n, xi, vi)
            write_curves_csv(curves_csv, rows())
    else:
        f = _function(fn, fn_csv)
        per_n = []
        for n in ns:
            r = operators.popoviciu_ratio(f, n, grid, operator=op)
            per_n.append((n, r.sup, r.argmax_x))
        best = max(per_n, key=lambda t: t[1])
        from .reports import ScanReport

        report = ScanReport(
            sup=best[1],
            argmax_x=best[2],
            argmax_n=best[0],
            grid=grid,
            per_n=tuple(per_n),
            meta={"operator": op, "function": f.name, "kind": "popoviciu-ratio"},
        )
    _emit(dump_json(report), out)


@cli.command("verify")
@click.option("--lemma", is_flag=True, help="rising-factorial inequality sweep")
@click.option("--kozniewska", is_flag=True, help="truncated-moment identity sweep")
@click.option("--n6", is_flag=True, help="n=6 case bounds")
@click.option("--conjecture", is_flag=True, help="monotonicity-in-c exploration")
@click.option("--n", "n_range", default="2..40", show_default=True)
@click.option("--points", type=int, default=2001, show_default=True)
@click.option("--c-samples", type=int, default=DEFAULT_C_SAMPLES, show_default=True)
@click.option("--out", "out", type=click.Path(), default=None)
@click.option("--workers", type=int, default=None)
def cmd_verify(lemma, kozniewska, n6, conjecture, n_range, points, c_samples, out, workers):
    """Run selected verifications; exit 1 if any non-exploratory check fails."""
    if not (lemma or kozniewska or n6 or conjecture):
        raise click.UsageError("select at least one of --lemma/--kozniewska/--n6/--conjecture")
    ns = _parse_range(n_range)
    workers = _resolve_workers(workers)
    grid = GridSpec(points=points)
    reports = []
    failed = False
    if lemma:
        rep = analysis.verify_lemma_claim(ns, grid=grid, c_samples=c_samples, workers=workers)
        reports.append(rep)
        failed |= not rep.passed
    if kozniewska:
        rep = analysis.verify_kozniewska(ns, grid=grid, c_samples=c_samples, workers=workers)
        reports.append(rep)
        failed |= not rep.passed
    if n6:
        rep = analysis.n6_case_check()
        reports.append(rep)
        failed |= not rep.passed
    if conjecture:
        rep = analysis.conjecture_scan(ns, grid=grid, c_grid_size=c_samples)
        reports.append(rep)  # exploratory: findings do not fail the run
    payload = {
        "schema": 1,
        "kind": "verification-suite",
        "reports": [r.to_json_dict() for r in reports],
    }
    _emit(dump_json(payload), out)
    if failed:
        sys.exit(1)


@cli.command("compare")
@click.option("--fn", "fn", default=None)
@click.option("--fn-csv", "fn_csv", default=None, type=click.Path(exists=True))
@click.option("--n", "n", type=int, required=True)
@click.option("--points", type=int, default=DEFAULT_POINTS, show_default=True)
@click.option("--out", "out", type=click.Path(), required=True)
def cmd_compare(fn, fn_csv, n, points, out):
    """Side-by-side error profiles of B_n and R_n (CSV x,err_bernstein,err_rn)."""
    f = _function(fn, fn_csv)
    if n <= 1:
        raise click.UsageError(f"compare requires n > 1, got {n}")
    xs = np.linspace(0.0, 1.0, points)
    fx = np.asarray(f(xs))
    err_b = operators.bernstein_curve(f, n, xs) - fx
    err_r = operators.r_n_curve(f, n, xs) - fx
    write_curves_csv(
        out,
        zip(xs.tolist(), err_b.tolist(), err_r.tolist()),
        header=("x", "err_bernstein", "err_rn"),
    )
    click.echo(f"wrote {points} rows to {out}")


def _error_object(kind: str, message: str) -> str:
    return json.dumps({"schema": 1, "kind": "error", "error": kind, "message": message},
                      sort_keys=True)


def main(argv: list[str] | None = None) -> None:
    try:
        cli.main(args=argv, standalone_mode=False)
    except click.UsageError as exc:
        click.echo(_error_object("usage", exc.format_message()), err=True)
        sys.exit(2)
    except click.exceptions.Exit as exc:
        sys.exit(exc.exit_code)
    except click.Abort:
        sys.exit(2)
    except (AdmissibilityError, ValueError, ZeroDivisionError, OSError) as exc:
        click.echo(_error_object(type(exc).__name__, str(exc)), err=True)
        sys.exit(2)


if __name__ == "__main__":
    main()
