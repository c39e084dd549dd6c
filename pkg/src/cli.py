"""
Command-line interface for qwlift.

This module provides the CLI for running lifted walks, verifying the lift
identities, comparing both systems and writing figure datasets.
"""

import json
import logging
import os
import sys
from typing import List

import click
from pydantic import ValidationError

from .benchmark import cross_check, run_benchmark, scaling_ratios, speedups
from .config import TOLERANCES, validate_run_request
from .figures import FIGURES, build_figure
from .line_walk import initial_lifted_state, lift_equivalence_residual, run_lifted_walk, site_distribution
from .oracle import equivalence_suite
from .report_writer import DatasetWriter, format_number
from .schemas import (
    BoundaryKind,
    BoundarySpec,
    InitialSpec,
    LiftMode,
    OutputFormat,
    RunRequest,
    Scaling,
)

# Configure logging; stdout is kept for results
logging.basicConfig(
    level=logging.INFO,
    format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    handlers=[
        logging.StreamHandler(sys.stderr)
    ]
)

logger = logging.getLogger(__name__)

BOUNDARY_CHOICES = click.Choice([kind.value for kind in BoundaryKind])


def _parse_sites(value: str):
    if value == "auto":
        return value
    try:
        return int(value)
    except ValueError:
        raise click.BadParameter(f"expected an integer or 'auto', got '{value}'", param_hint="--sites")


def _parse_int_list(ctx, param, value: str) -> List[int]:
    try:
        numbers = [int(item) for item in value.split(",") if item.strip()]
    except ValueError:
        raise click.BadParameter(f"expected a comma-separated list of integers, got '{value}'")
    if not numbers or any(number <= 0 for number in numbers):
        raise click.BadParameter(f"expected positive integers, got '{value}'")
    return numbers


def build_request(
    steps: int,
    sites: str,
    boundary: str,
    cyclic: bool,
    initial: str,
    scaling: str = Scaling.SQRT2_STEP.value,
    lift_mode: str = LiftMode.SIGN_SPLIT.value,
    output: str = "walk.csv",
    fmt: str = OutputFormat.CSV.value,
    dense: bool = False,
) -> RunRequest:
    """
    Turn command-line values into a validated run request.

    Every failure is raised as a click usage error naming the offending field.

    Returns:
        RunRequest: Validated request
    """
    try:
        spec = InitialSpec.parse(initial)
    except ValueError as e:
        raise click.BadParameter(str(e), param_hint="--initial")

    try:
        request = RunRequest(
            steps=steps,
            sites=_parse_sites(sites),
            boundary=BoundarySpec(kind=boundary, cyclic=cyclic),
            initial=spec,
            scaling=scaling,
            lift_mode=lift_mode,
            output=output,
            format=fmt,
        )
    except ValidationError as e:
        error = e.errors()[0]
        field = ".".join(str(part) for part in error["loc"]) or "request"
        raise click.UsageError(f"Invalid {field}: {error['msg']}")

    errors = validate_run_request(request, dense=dense)
    if errors:
        field, message = next(iter(errors.items()))
        raise click.UsageError(f"Invalid {field}: {message}")
    return request


@click.group()
@click.option("--verbose", "-v", is_flag=True, help="Log at DEBUG level.")
def cli(verbose: bool = False):
    """qwlift - Hadamard walks lifted to a four-state Markov chain."""
    if verbose:
        logging.getLogger().setLevel(logging.DEBUG)


@cli.command()
@click.option("--seed", default=0, show_default=True, help="Seed of the random starts.")
@click.option("--json", "json_output", is_flag=True, help="Print the report as JSON.")
def verify(seed: int = 0, json_output: bool = False):
    """
    Run the lift identity suite. Exits 1 if any identity fails.
    """
    try:
        report = equivalence_suite(seed)
    except Exception as e:
        logger.error(f"Error running the identity suite: {e}")
        sys.exit(1)

    if json_output:
        click.echo(json.dumps([row.model_dump(by_alias=True) for row in report.rows], indent=2))
    else:
        for row in report.rows:
            status = "PASS" if row.passed else "FAIL"
            click.echo(f"{row.name:<5} {row.identity:<26} {row.residual:.3e}  (tol {row.tolerance:.0e})  {status}")

    if not report.all_passed:
        sys.exit(1)


@cli.command()
@click.option("--steps", type=int, required=True, help="Number of steps.")
@click.option("--sites", default="auto", show_default=True, help="Number of sites, or 'auto' for 2n+3 centred on 0.")
@click.option("--boundary", type=BOUNDARY_CHOICES, default="none", show_default=True)
@click.option("--cyclic", is_flag=True, help="Close the shift cyclically (reflect and trap boundaries).")
@click.option("--initial", required=True, help="Initial state, e.g. 'point:0:(1,0),(0,0)'.")
@click.option("--scaling", type=click.Choice([s.value for s in Scaling]), default="sqrt2-step", show_default=True)
@click.option("--lift-mode", type=click.Choice([m.value for m in LiftMode]), default="sign-split", show_default=True)
@click.option("--output", default="walk.csv", show_default=True, help="Dataset path.")
@click.option("--format", "fmt", type=click.Choice([f.value for f in OutputFormat]), default="csv", show_default=True)
def run(
    steps: int,
    sites: str,
    boundary: str,
    cyclic: bool,
    initial: str,
    scaling: str,
    lift_mode: str,
    output: str,
    fmt: str,
):
    """
    Evolve a lifted walk and write the per-site dataset.
    """
    request = build_request(steps, sites, boundary, cyclic, initial, scaling, lift_mode, output, fmt)

    try:
        distribution = site_distribution(run_lifted_walk(request))
        writer = DatasetWriter(os.path.dirname(output) or ".")
        path = writer.write(distribution, os.path.basename(output), request.format)
    except Exception as e:
        logger.error(f"Error running walk: {e}")
        sys.exit(1)

    click.echo(f"Wrote {len(distribution.labels)} sites to {path}")
    click.echo(f"Total quantum probability: {format_number(distribution.prob_total.sum())}")


@cli.command()
@click.option("--sites", type=int, required=True, help="Number of sites (at most 64).")
@click.option("--steps", type=int, required=True, help="Number of steps (at most 20).")
@click.option("--boundary", type=BOUNDARY_CHOICES, default="none", show_default=True)
@click.option("--cyclic", is_flag=True, help="Close the shift cyclically (reflect and trap boundaries).")
@click.option("--initial", required=True, help="Initial state, sites labelled 1..M.")
@click.option("--lift-mode", type=click.Choice([m.value for m in LiftMode]), default="sign-split", show_default=True)
def compare(sites: int, steps: int, boundary: str, cyclic: bool, initial: str, lift_mode: str):
    """
    Compare the projected lifted walk with the unitary walk. Exits 1 if they differ.
    """
    request = build_request(steps, str(sites), boundary, cyclic, initial, lift_mode=lift_mode, dense=True)

    try:
        start = initial_lifted_state(request)
        deviation = lift_equivalence_residual(sites, steps, start, request.boundary)
    except Exception as e:
        logger.error(f"Error comparing walks: {e}")
        sys.exit(1)

    click.echo(f"Max deviation: {format_number(deviation)}")
    if deviation >= TOLERANCES["lift"]:
        logger.error(f"Deviation {deviation:.3e} exceeds {TOLERANCES['lift']:.0e}")
        sys.exit(1)


@cli.command()
@click.argument("figure_id", type=click.Choice([str(key) for key in sorted(FIGURES)]))
@click.option("--output-dir", default=".", show_default=True, help="Directory to save datasets to.")
@click.option("--format", "fmt", type=click.Choice([f.value for f in OutputFormat]), default="csv", show_default=True)
def figure(figure_id: str, output_dir: str = ".", fmt: str = "csv"):
    """
    Write the datasets behind a figure.

    FIGURE_ID is one of 3, 4, 5, 8 or 9.
    """
    try:
        paths = build_figure(int(figure_id), output_dir, OutputFormat(fmt))
    except Exception as e:
        logger.error(f"Error building figure {figure_id}: {e}")
        sys.exit(1)

    for path in paths:
        click.echo(path)


@cli.command()
@click.option("--sites", default="64,1024,2048,4096", show_default=True, callback=_parse_int_list,
              help="Comma-separated lattice sizes.")
@click.option("--steps", default="100,1000", show_default=True, callback=_parse_int_list,
              help="Comma-separated step counts.")
@click.option("--repeats", default=3, show_default=True, type=click.IntRange(min=1),
              help="Timed runs per row; the fastest is reported.")
@click.option("--json", "json_output", is_flag=True, help="Print the rows as JSON.")
def bench(sites: List[int], steps: List[int], repeats: int = 3, json_output: bool = False):
    """
    Time structural against dense evolution.
    """
    try:
        deviation = cross_check()
        if deviation >= TOLERANCES["bench_agreement"]:
            logger.error(f"Structural and dense engines disagree by {deviation:.3e}")
            sys.exit(1)
        rows = run_benchmark(sites, steps, repeats)
    except Exception as e:
        logger.error(f"Error running benchmark: {e}")
        sys.exit(1)

    if json_output:
        click.echo(json.dumps([row.model_dump() for row in rows], indent=2))
        return

    click.echo(f"{'engine':<11} {'m':>6} {'n':>6} {'seconds':>10} {'steps/s':>12}")
    for row in rows:
        click.echo(f"{row.engine:<11} {row.m:>6} {row.n:>6} {row.seconds:>10.4f} {row.steps_per_sec:>12.1f}")
    for (m, n), speedup in sorted(speedups(rows).items()):
        click.echo(f"speedup m={m} n={n}: {speedup:.1f}x")
    for (m, n), ratio in sorted(scaling_ratios(rows).items()):
        click.echo(f"time(2m)/time(m) m={m} n={n}: {ratio:.2f}")


if __name__ == "__main__":
    cli()
