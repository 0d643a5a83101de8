"""Command line interface.

Exit codes: 0 success, 2 singular or irregular scheme, 1 usage, I/O or
schema problems.
"""

from __future__ import annotations

import csv
import io
import sys
import warnings
from dataclasses import dataclass
from pathlib import Path

import click
import numpy as np

from . import norming
from .errors import BirkhoffError, SingularSchemeError
from .fit import FitProblem, minimax_fit, robust_experiment
from .grids import Box
from .linalg import PIVOT_TOLERANCE
from .plot import write_lebesgue_svg
from .polyspace import eval_poly
from .serialize import (
    dump_json,
    json_float,
    load_json,
    polynomial_from_json,
    polynomial_to_json,
    samples_from_json,
    samples_to_json,
    scheme_from_json,
)
from .solver import (
    apply_functionals,
    estimate_norming_constant,
    solve_staged,
    taylor_scheme,
    univariate_scheme,
)
from .vandermonde import check_scheme_regularity

EXIT_OK, EXIT_USAGE, EXIT_SINGULAR = 0, 1, 2


@dataclass(frozen=True)
class Config:
    grid_size: int = 4096
    seed: int = 0
    pivot_tolerance: float = PIVOT_TOLERANCE

    def __post_init__(self):
        if self.grid_size < 1:
            raise click.UsageError(f"grid size must be positive, got {self.grid_size}")
        if not 0.0 < self.pivot_tolerance < 1.0:
            raise click.UsageError(f"tolerance must lie in (0, 1), got {self.pivot_tolerance}")


class _Group(click.Group):
    """Maps click's usage errors (exit 2 by default) onto exit code 1."""

    def main(self, args=None, prog_name=None, complete_var=None, standalone_mode=True, **extra):
        try:
            rv = super().main(args, prog_name, complete_var, standalone_mode=False, **extra)
        except click.exceptions.Abort:
            click.echo("Aborted!", err=True)
            sys.exit(EXIT_USAGE)
        except click.ClickException as exc:
            exc.show()
            sys.exit(EXIT_USAGE)
        sys.exit(rv or 0)


def _fail(code: int, message: str):
    click.echo(f"error: {message}", err=True)
    raise click.exceptions.Exit(code)


def _run(fn):
    """Translate library exceptions into the exit-code contract."""
    try:
        return fn()
    except SingularSchemeError as exc:
        _fail(EXIT_SINGULAR, str(exc))
    except (BirkhoffError, OSError, ValueError) as exc:
        _fail(EXIT_USAGE, str(exc))


def _load_scheme(path):
    return scheme_from_json(load_json(path))


def _finite(obj):
    if isinstance(obj, float):
        return json_float(obj)
    if isinstance(obj, dict):
        return {k: _finite(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_finite(v) for v in obj]
    return obj


def _emit(obj, out: str | None = None):
    text = dump_json(_finite(obj))
    if out:
        Path(out).write_text(text)
    else:
        click.echo(text, nl=False)


grid_option = click.option("--grid", "grid_size", type=int, default=4096, show_default=True, help="Grid size.")
seed_option = click.option(
    "--seed", type=int, default=0, envvar="BIRKHOFF_SEED", show_default=True, help="Grid/noise seed (env BIRKHOFF_SEED)."
)
tol_option = click.option(
    "--tol", "tolerance", type=float, default=PIVOT_TOLERANCE, show_default=True, help="Pivot-ratio threshold."
)


@click.group(cls=_Group)
def cli():
    """Recover polynomials in several variables from directional derivative samples."""


@cli.command()
@click.argument("scheme_path", type=click.Path())
@tol_option
def check(scheme_path, tolerance):
    """Per-degree regularity report of an exact scheme."""
    cfg = Config(pivot_tolerance=tolerance)
    report = _run(lambda: check_scheme_regularity(_load_scheme(scheme_path), cfg.pivot_tolerance))
    _emit(report.to_dict())
    if not report.regular:
        click.echo(f"irregular at degree(s) {report.failing_degrees}", err=True)
        raise click.exceptions.Exit(EXIT_SINGULAR)


@cli.command()
@click.argument("scheme_path", type=click.Path())
@click.argument("samples_path", type=click.Path())
@click.option("--out", "out_path", type=click.Path(), help="Write the polynomial here instead of stdout.")
@tol_option
def solve(scheme_path, samples_path, out_path, tolerance):
    """Interpolate samples on an exact scheme with the staged solver."""
    cfg = Config(pivot_tolerance=tolerance)

    def work():
        scheme = _load_scheme(scheme_path)
        samples = samples_from_json(load_json(samples_path))
        P = solve_staged(scheme, samples, cfg.pivot_tolerance)
        resid = np.abs(apply_functionals(scheme, P) - np.asarray(samples.values))
        return P, float(resid.max()) if resid.size else 0.0

    P, residual = _run(work)
    if out_path:
        _emit(polynomial_to_json(P), out_path)
        _emit({"max_residual": residual})
    else:
        _emit(polynomial_to_json(P))
        click.echo(f"max residual {residual!r}", err=True)


def _parse_floats(text: str, what: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise click.UsageError(f"{what}: expected comma-separated numbers, got {text!r}") from None


@cli.command("eval")
@click.argument("poly_path", type=click.Path())
@click.option("--point", "points", multiple=True, help="Comma-separated coordinates; repeatable.")
@click.option("--scheme", "scheme_path", type=click.Path(), help="Apply the scheme's functionals instead.")
def eval_cmd(poly_path, points, scheme_path):
    """Evaluate a polynomial at points, or sample it on a scheme."""
    if bool(points) == bool(scheme_path):
        raise click.UsageError("give either --point (repeatable) or --scheme")

    def work():
        P = polynomial_from_json(load_json(poly_path))
        if scheme_path:
            return samples_to_json(apply_functionals(_load_scheme(scheme_path), P))
        return {"values": [eval_poly(P, _parse_floats(p, "--point")) for p in points]}

    _emit(_run(work))


@cli.command()
@click.option("--thetas", help="Comma-separated theta_0..theta_d.")
@click.option("--omega", type=float, help="Remez parameter in (0, 1]; sets every theta.")
@click.option("--n", "n", type=int, help="Dimension (needed with --omega).")
@click.option("--d", "d", type=int, help="Degree.")
def bound(thetas, omega, n, d):
    """Norming bound ladder from thetas or from a Remez parameter."""
    if (thetas is None) == (omega is None):
        raise click.UsageError("give exactly one of --thetas / --omega")
    if thetas is not None:
        values = _parse_floats(thetas, "--thetas")
        if d is not None and d != len(values) - 1:
            raise click.UsageError(f"--d {d} needs {d + 1} thetas, got {len(values)}")
        d = len(values) - 1
    else:
        if n is None or d is None:
            raise click.UsageError("--omega needs --n and --d")
        values = _run(lambda: [norming.remez_theta(omega, n, d)] * (d + 1))
    trace = _run(lambda: norming.norming_bound(values, d))
    out = trace.to_dict()
    if omega is not None:
        out["omega"] = omega
        out["n"] = n
    _emit(out)


@cli.command()
@click.argument("scheme_path", type=click.Path())
@grid_option
@seed_option
@tol_option
@click.option("--plot", "plot_path", type=click.Path(), help="Write an SVG of the Lebesgue function.")
def estimate(scheme_path, grid_size, seed, tolerance, plot_path):
    """Grid estimate of the norming constant of an exact scheme."""
    cfg = Config(grid_size, seed, tolerance)

    def work():
        scheme = _load_scheme(scheme_path)
        domain = scheme.get_domain()
        value = estimate_norming_constant(scheme, domain, cfg.grid_size, cfg.seed, cfg.pivot_tolerance)
        if plot_path:
            write_lebesgue_svg(scheme, domain, plot_path)
        return {"norming_estimate": value, "grid_size": cfg.grid_size, "seed": cfg.seed, "domain": domain.to_dict()}

    _emit(_run(work))


@cli.command()
@click.argument("scheme_path", type=click.Path())
@grid_option
@seed_option
def theta(scheme_path, grid_size, seed):
    """Per-order direction constants and the resulting norming bound."""
    cfg = Config(grid_size, seed)

    def work():
        scheme = _load_scheme(scheme_path)
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", norming.NormingWarning)
            trace = norming.scheme_norming_bound(scheme, cfg.grid_size, cfg.seed)
        for w in caught:
            click.echo(f"warning: {w.message}", err=True)
        out = trace.to_dict()
        out.update(grid_size=cfg.grid_size, seed=cfg.seed)
        return out

    _emit(_run(work))


@cli.command()
@click.argument("scheme_path", type=click.Path())
@click.argument("samples_path", type=click.Path())
@click.option("--degree", type=int, help="Degree of the fitted polynomial (default: scheme d).")
@click.option("--out", "out_path", type=click.Path(), help="Write the polynomial here.")
def fit(scheme_path, samples_path, degree, out_path):
    """Minimax fit of samples on an arbitrary (possibly overdetermined) scheme."""

    def work():
        scheme = _load_scheme(scheme_path)
        samples = samples_from_json(load_json(samples_path))
        return minimax_fit(FitProblem(scheme, samples.values, degree))

    result = _run(work)
    poly = polynomial_to_json(result.polynomial)
    if out_path:
        _emit(poly, out_path)
    _emit({"residual": result.achieved_residual, "iterations": result.iterations, "polynomial": poly})


@cli.command()
@click.argument("scheme_path", type=click.Path())
@click.argument("truth_path", type=click.Path())
@click.option("--h", "noise_h", type=float, default=0.01, show_default=True, help="Noise amplitude.")
@click.option("--trials", type=int, default=100, show_default=True)
@grid_option
@seed_option
@click.option("--out", "out_path", type=click.Path(), help="Write the report here instead of stdout.")
def robust(scheme_path, truth_path, noise_h, trials, grid_size, seed, out_path):
    """Noisy-sample reconstruction experiment against the 2N(E+h) bound."""
    cfg = Config(grid_size, seed)

    def work():
        scheme = _load_scheme(scheme_path)
        truth = polynomial_from_json(load_json(truth_path))
        return robust_experiment(truth, scheme, noise_h, trials, cfg.seed, cfg.grid_size)

    report = _run(work)
    _emit(report.to_dict(), out_path)
    if out_path:
        click.echo(dump_json(report.to_dict()["summary"]), nl=False)


def taylor_rows(d_max: int, points: str, grid_size: int, permute_seed: int | None = None) -> list[dict]:
    """Norming estimates on [0, 1] of the univariate schemes d = 1..d_max."""
    box = Box((0.0,), (1.0,))
    rows = []
    for d in range(1, d_max + 1):
        if points == "taylor":
            nodes = [0.0] * (d + 1)
        else:
            nodes = np.linspace(0.0, 1.0, d + 1).tolist()
            if permute_seed is not None:
                nodes = np.random.default_rng([permute_seed, d]).permutation(nodes).tolist()
        scheme = taylor_scheme(d) if points == "taylor" else univariate_scheme(nodes)
        value = estimate_norming_constant(scheme, box, grid_size)
        rows.append({"d": d, "points": points, "norming_estimate": value, "nodes": nodes})
    return rows


@cli.command("taylor-exp")
@click.option("--d-max", type=int, default=12, show_default=True)
@click.option("--points", type=click.Choice(["taylor", "equidistant"]), default="taylor", show_default=True)
@click.option("--permute-seed", type=int, help="Shuffle the equidistant points per degree.")
@grid_option
def taylor_exp(d_max, points, permute_seed, grid_size):
    """Univariate norming experiment on [0, 1], printed as CSV."""
    if d_max < 1:
        raise click.UsageError("--d-max must be at least 1")
    rows = _run(lambda: taylor_rows(d_max, points, grid_size, permute_seed))
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["d", "points", "norming_estimate", "nodes"])
    for r in rows:
        writer.writerow([r["d"], r["points"], repr(r["norming_estimate"]), " ".join(f"{x:.6g}" for x in r["nodes"])])
    click.echo(buf.getvalue(), nl=False)


def main():
    cli()


if __name__ == "__main__":
    main()
