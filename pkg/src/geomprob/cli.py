"""Command-line front end emitting machine-readable reports.

Exit codes: 0 success / all checks pass, 1 verification failure, 2 unknown
command or experiment, 3 invalid arguments.  Reports go to stdout or --out
as JSON or CSV; when writing to a file a figure is rendered next to it
unless --no-plot is given.
"""

from __future__ import annotations

import math
from pathlib import Path

import click

from . import crofton, exact, geom, mc, plots, verify
from .report import build_report, csv_text, report_json, write_text

DEFAULT_SEED = 20070101
DEFAULT_SAMPLES = 1_000_000
DEFAULT_BINS = 40
DEFAULT_PANELS = 4096

FORMATS = ("json", "csv")


def _fail(message: str, code: int) -> None:
    click.echo(f"error: {message}", err=True)
    raise SystemExit(code)


class _NumericFlag(click.ParamType):
    """Integer flag whose parse failures exit with code 3, not click's 2."""

    name = "integer"

    def convert(self, value, param, ctx):
        if isinstance(value, int):
            return value
        try:
            return int(value)
        except (TypeError, ValueError):
            _fail(f"invalid value for --{param.name}: {value!r}", 3)


NUMERIC = _NumericFlag()


def _common_options(func):
    func = click.option("--out", default=None, help="write the report to this path")(func)
    func = click.option(
        "--format", "fmt", default="json", help="report format: json or csv"
    )(func)
    func = click.option(
        "--compare",
        is_flag=True,
        help="omit the timestamp so reports can be byte-compared",
    )(func)
    func = click.option("--plot", "plot_path", default=None, help="write a figure to this path")(func)
    func = click.option("--no-plot", is_flag=True, help="suppress the figure next to --out")(func)
    return func


def _figure_path(out: str | None, plot_path: str | None, no_plot: bool) -> str | None:
    if no_plot:
        return None
    if plot_path is not None:
        return plot_path
    if out is not None:
        return str(Path(out).with_suffix(".png"))
    return None


def _validate_format(fmt: str) -> str:
    if fmt not in FORMATS:
        _fail(f"unknown format {fmt!r}; expected one of {', '.join(FORMATS)}", 3)
    return fmt


def _emit(report, fmt: str, out: str | None, csv_payload) -> None:
    if fmt == "json":
        text = report_json(report)
    else:
        header, rows = csv_payload
        text = csv_text(header, rows)
    write_text(text, out)
    if out is not None:
        click.echo(f"report written to {out}", err=True)


@click.group()
def main() -> None:
    """Geometric probability laboratory: exact constants, Crofton quadrature
    checks, and seeded Monte Carlo experiments."""


# ---------------------------------------------------------------------------
# constants
# ---------------------------------------------------------------------------

@main.command("constants")
@_common_options
def cmd_constants(out, fmt, compare, plot_path, no_plot) -> None:
    """Emit every exact constant with its integer fields and float rendering."""
    fmt = _validate_format(fmt)
    table = exact.constants_table()
    results = {name: value.as_dict() for name, value in sorted(table.items())}
    report = build_report("constants", seed=None, results=results, timestamp=not compare)
    header = ["name", "term", "num", "den", "pi_half_power", "term_value", "value"]
    rows = []
    for name, value in sorted(table.items()):
        terms = value.terms if isinstance(value, exact.PiSum) else (value,)
        for i, term in enumerate(terms):
            rows.append(
                [name, i, term.num, term.den, term.half_power, float(term), float(value)]
            )
    _emit(report, fmt, out, (header, rows))


# ---------------------------------------------------------------------------
# estimate
# ---------------------------------------------------------------------------

_ESTIMATE_DIMS = {"simplex": (1, 2, 3), "sylvester": (2, 3)}


@main.command("estimate")
@click.argument("experiment")
@click.option("--dim", type=NUMERIC, default=2, help="dimension for simplex/sylvester")
@click.option("--samples", type=NUMERIC, default=DEFAULT_SAMPLES)
@click.option("--seed", type=NUMERIC, default=DEFAULT_SEED)
@click.option("--workers", type=NUMERIC, default=1)
@_common_options
def cmd_estimate(experiment, dim, samples, seed, workers, out, fmt, compare, plot_path, no_plot):
    """Run one Monte Carlo experiment and compare against its exact value.

    EXPERIMENT is one of: simplex, sylvester, center-triangle,
    boundary-triangle, offcut, mean-distance.
    """
    fmt = _validate_format(fmt)
    if experiment not in mc.EXPERIMENTS:
        _fail(f"unknown experiment {experiment!r}; expected one of {', '.join(mc.EXPERIMENTS)}", 2)
    if experiment in _ESTIMATE_DIMS and dim not in _ESTIMATE_DIMS[experiment]:
        _fail(f"experiment {experiment!r} supports --dim in {_ESTIMATE_DIMS[experiment]}", 3)
    if samples < 2:
        _fail(f"--samples must be at least 2, got {samples}", 3)
    if workers < 1:
        _fail(f"--workers must be at least 1, got {workers}", 3)

    runners = {
        "simplex": lambda: mc.estimate_simplex_volume(dim, samples, seed, workers),
        "sylvester": lambda: mc.estimate_sylvester(dim, samples, seed, workers),
        "center-triangle": lambda: mc.estimate_center_triangle(samples, seed, workers),
        "boundary-triangle": lambda: mc.estimate_boundary_triangle(samples, seed, workers),
        "offcut": lambda: mc.estimate_offcut(samples, seed, workers),
        "mean-distance": lambda: mc.estimate_mean_distance(samples, seed, workers),
    }
    try:
        estimate = runners[experiment]()
    except ValueError as err:
        _fail(str(err), 3)

    reference = mc.exact_reference(experiment, dim)
    results = dict(estimate.as_dict())
    results["exact"] = reference
    if reference is not None:
        results["abs_error"] = abs(estimate.mean - reference)
        results["rel_error"] = abs(estimate.mean - reference) / abs(reference)

    command = f"estimate {experiment}"
    if experiment in _ESTIMATE_DIMS:
        command += f" --dim {dim}"
    report = build_report(command, seed=seed, results=results, timestamp=not compare)
    header = [
        "experiment", "mean", "std_error", "n", "ci_lo", "ci_hi",
        "seed", "workers", "exact", "abs_error",
    ]
    rows = [[
        estimate.experiment, estimate.mean, estimate.std_error, estimate.n,
        estimate.ci95[0], estimate.ci95[1], estimate.seed, estimate.workers,
        reference, results.get("abs_error"),
    ]]
    _emit(report, fmt, out, (header, rows))
    figure = _figure_path(out, plot_path, no_plot)
    if figure:
        plots.save_estimate_figure(estimate, reference, figure)
        click.echo(f"figure written to {figure}", err=True)


# ---------------------------------------------------------------------------
# crofton
# ---------------------------------------------------------------------------

_LENGTH_SHAPES = ("segment", "circle", "square")
_MOMENT_SHAPES = ("disk", "square")


def _length_polyline(shape: str) -> crofton.Polyline:
    if shape == "segment":
        return crofton.Polyline.segment()
    if shape == "circle":
        return crofton.Polyline.regular_ngon(1024)
    half = 0.5
    return crofton.Polyline(
        ((-half, -half), (half, -half), (half, half), (-half, half), (-half, -half))
    )


@main.command("crofton")
@click.argument("target")
@click.option("--shape", default=None, help="segment/circle/square for length, disk/square for moments")
@click.option("--panels", type=NUMERIC, default=DEFAULT_PANELS)
@_common_options
def cmd_crofton(target, shape, panels, out, fmt, compare, plot_path, no_plot):
    """Verify the length formula or the chord moments by quadrature.

    TARGET is `length` or `moments`.
    """
    fmt = _validate_format(fmt)
    if target not in ("length", "moments"):
        _fail(f"unknown crofton target {target!r}; expected length or moments", 2)
    if panels < 8 or panels % 2 != 0:
        _fail(f"--panels must be an even integer >= 8, got {panels}", 3)

    if target == "length":
        shape = shape or "segment"
        if shape not in _LENGTH_SHAPES:
            _fail(f"--shape for length must be one of {', '.join(_LENGTH_SHAPES)}", 3)
        curve = _length_polyline(shape)
        measured = crofton.crofton_length(curve, panels)
        results = {
            "shape": shape,
            "panels": panels,
            "measured_length": measured,
            "true_length": curve.length,
            "abs_error": abs(measured - curve.length),
        }
        report = build_report(f"crofton length --shape {shape}", None, results, timestamp=not compare)
        header = ["shape", "panels", "measured_length", "true_length", "abs_error"]
        rows = [[shape, panels, measured, curve.length, results["abs_error"]]]
        _emit(report, fmt, out, (header, rows))
        return

    shape = shape or "disk"
    if shape not in _MOMENT_SHAPES:
        _fail(f"--shape for moments must be one of {', '.join(_MOMENT_SHAPES)}", 3)
    body = geom.ConvexBody2.unit_disk() if shape == "disk" else geom.ConvexBody2.unit_square()
    area = body.area
    references = {0: body.perimeter, 1: math.pi * area, 3: 3.0 * area * area}
    if shape == "disk":
        # I_n = 2 pi 2^n * moment integral(n+1) in closed form for the disk
        for n in (2, 4):
            references[n] = float(
                exact.PiRational(2**n, 1, 2) * exact.PiRational(2) * exact.half_ball_integral(n + 1)
            )
    moment_rows = []
    for n in range(5):
        result = crofton.chord_moment(body, n, panels)
        ref = references.get(n)
        moment_rows.append(
            {
                "n": n,
                "value": result.value,
                "error_estimate": result.error,
                "reference": ref,
                "rel_error": None if ref is None else abs(result.value - ref) / abs(ref),
            }
        )
    i3 = moment_rows[3]["value"]
    i4 = moment_rows[4]["value"]
    results = {
        "shape": shape,
        "panels": panels,
        "moments": moment_rows,
        "J0": i3 / 3.0,
        "J0_reference": area * area,
        "mean_distance": i4 / 6.0 / (area * area),
    }
    report = build_report(f"crofton moments --shape {shape}", None, results, timestamp=not compare)
    header = ["n", "value", "error_estimate", "reference", "rel_error"]
    rows = [
        [r["n"], r["value"], r["error_estimate"], r["reference"], r["rel_error"]]
        for r in moment_rows
    ]
    _emit(report, fmt, out, (header, rows))
    figure = _figure_path(out, plot_path, no_plot)
    if figure:
        plots.save_moments_figure(moment_rows, shape, figure)
        click.echo(f"figure written to {figure}", err=True)


# ---------------------------------------------------------------------------
# density
# ---------------------------------------------------------------------------

@main.command("density")
@click.argument("target")
@click.option("--samples", type=NUMERIC, default=DEFAULT_SAMPLES)
@click.option("--bins", type=NUMERIC, default=DEFAULT_BINS)
@click.option("--seed", type=NUMERIC, default=DEFAULT_SEED)
@click.option("--workers", type=NUMERIC, default=1)
@_common_options
def cmd_density(target, samples, bins, seed, workers, out, fmt, compare, plot_path, no_plot):
    """Histogram an empirical density against its analytic law.

    TARGET is 2, 3 or 4 (secant offset in that dimension) or `max-radius`.
    """
    fmt = _validate_format(fmt)
    if target not in ("2", "3", "4", "max-radius"):
        _fail(f"unknown density target {target!r}; expected 2, 3, 4 or max-radius", 3)
    try:
        if target == "max-radius":
            law = exact.max_radius_density()
            hist = mc.max_radius_gof(samples, seed, workers, bins=bins)
        else:
            dim = int(target)
            law = exact.secant_offset_density(dim)
            hist = mc.secant_offset_histogram(dim, samples, bins, seed, workers)
    except ValueError as err:
        _fail(str(err), 3)

    report = build_report(
        f"density {target}", seed=seed, results=hist.as_dict(), timestamp=not compare
    )
    header = ["bin_lo", "bin_hi", "observed", "expected"]
    rows = [
        [float(hist.edges[i]), float(hist.edges[i + 1]), int(hist.observed[i]), float(hist.expected[i])]
        for i in range(hist.observed.size)
    ]
    _emit(report, fmt, out, (header, rows))
    figure = _figure_path(out, plot_path, no_plot)
    if figure:
        plots.save_density_figure(hist, law, figure)
        click.echo(f"figure written to {figure}", err=True)


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

@main.command("verify")
@click.option("--samples", type=NUMERIC, default=DEFAULT_SAMPLES)
@click.option("--seed", type=NUMERIC, default=DEFAULT_SEED)
@click.option("--workers", type=NUMERIC, default=1)
@click.option("--strict", is_flag=True, help="stated tolerances only, never skip checks")
@click.option("--panels", type=NUMERIC, default=DEFAULT_PANELS)
@click.option("--bins", type=NUMERIC, default=DEFAULT_BINS)
@_common_options
def cmd_verify(samples, seed, workers, strict, panels, bins, out, fmt, compare, plot_path, no_plot):
    """Run the full verification battery; exit 0 iff every check passes."""
    fmt = _validate_format(fmt)
    for name, value, minimum in (
        ("--samples", samples, 2),
        ("--workers", workers, 1),
        ("--bins", bins, 10),
    ):
        if value < minimum:
            _fail(f"{name} must be at least {minimum}, got {value}", 3)
    if panels < 8 or panels % 2 != 0:
        _fail(f"--panels must be an even integer >= 8, got {panels}", 3)

    checks, all_passed, warnings = verify.run_battery(
        samples=samples, seed=seed, workers=workers, strict=strict, panels=panels, bins=bins
    )
    for warning in warnings:
        click.echo(f"warning: {warning}", err=True)
    for check in checks:
        status = "SKIP" if check["skipped"] else ("PASS" if check["passed"] else "FAIL")
        line = f"[{status}] {check['name']}"
        if check["error"] is not None and check["tolerance"] is not None:
            line += f"  error={check['error']:.3e} tol={check['tolerance']:.3e}"
        if check["detail"]:
            line += f"  ({check['detail']})"
        click.echo(line)
    total = sum(1 for c in checks if not c["skipped"])
    passed = sum(1 for c in checks if not c["skipped"] and c["passed"])
    skipped = sum(1 for c in checks if c["skipped"])
    click.echo(f"{passed}/{total} checks passed, {skipped} skipped")

    if out is not None:
        results = {
            "samples": samples,
            "workers": workers,
            "strict": strict,
            "panels": panels,
            "bins": bins,
            "passed": all_passed,
        }
        report = build_report(
            "verify", seed=seed, results=results, checks=checks, timestamp=not compare
        )
        header = ["name", "kind", "status", "value", "reference", "error", "tolerance"]
        rows = [
            [
                c["name"], c["kind"],
                "skip" if c["skipped"] else ("pass" if c["passed"] else "fail"),
                c["value"], c["reference"], c["error"], c["tolerance"],
            ]
            for c in checks
        ]
        _emit(report, fmt, out, (header, rows))
    figure = _figure_path(out, plot_path, no_plot)
    if figure:
        plots.save_verify_figure(checks, figure)
        click.echo(f"figure written to {figure}", err=True)
    raise SystemExit(0 if all_passed else 1)


if __name__ == "__main__":
    main()
