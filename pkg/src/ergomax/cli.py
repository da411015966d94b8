import importlib.metadata
import logging
import sys
from typing import Any, Optional

import click
from rich.logging import RichHandler

from ergomax.cli_ui import (
    err_console,
    render_dashboard,
    render_error,
    render_identity_failures,
    render_report,
)
from ergomax.core.config import resolve_tolerances
from ergomax.core.errors import ErgomaxError, ParseError
from ergomax.core.telemetry import get_telemetry
from ergomax.dispatcher import default_dispatcher
from ergomax.pressure import registry
from ergomax.symbolic.catalog import BUILTIN_SYSTEMS

try:
    VERSION = importlib.metadata.version("ergomax")
except Exception:
    VERSION = "0.1.0"

CSV_COMMANDS = {"horizons", "three-point"}

SYSTEM_HELP = "System JSON file, or a built-in name: " + ", ".join(BUILTIN_SYSTEMS)


def output_options(f):
    """--json / --csv / --table, repeatable --tol NAME=VALUE and --out FILE."""
    f = click.option(
        "--out", type=click.Path(dir_okay=False), default=None, metavar="FILE", help="Also save the JSON report here."
    )(f)
    f = click.option(
        "--tol", "tol_items", multiple=True, metavar="NAME=VALUE", help="Override a named tolerance."
    )(f)
    f = click.option("--table", "fmt", flag_value="table", help="Rich tables for humans.")(f)
    f = click.option("--csv", "fmt", flag_value="csv", help="CSV (tabular commands only).")(f)
    f = click.option("--json", "fmt", flag_value="json", default=True, help="JSON report (default).")(f)
    return f


def system_option(f):
    return click.option("--system", "system_ref", required=True, metavar="FILE|NAME", help=SYSTEM_HELP)(f)


def _run(
    command: str, inputs: dict[str, Any], fmt: str, tol_items: tuple[str, ...], out: Optional[str] = None
) -> None:
    """Dispatch one command and emit its report; ErgomaxError becomes its exit code."""
    inputs = {k: v for k, v in inputs.items() if v is not None}
    try:
        if fmt == "csv" and command not in CSV_COMMANDS:
            raise ParseError(f"--csv is only offered by: {', '.join(sorted(CSV_COMMANDS))}")
        tolerances = resolve_tolerances(list(tol_items))
        outcome = default_dispatcher().dispatch(command, inputs, tolerances)
    except ErgomaxError as e:
        render_error(str(e))
        sys.exit(e.exit_code)

    if fmt == "csv":
        click.echo(outcome.csv, nl=False)
    elif fmt == "table":
        render_report(outcome.report)
    else:
        click.echo(outcome.report.to_json())

    if out:
        err_console.print(f"[ergo.muted]report saved to {outcome.report.save(out)}[/]")

    if outcome.failures:
        render_identity_failures(command, outcome.failures)
        sys.exit(outcome.exit_code)


@click.group(invoke_without_command=True)
@click.version_option(VERSION, prog_name="ergomax")
@click.option("-v", "--verbose", is_flag=True, help="Log algorithm milestones to stderr.")
@click.pass_context
def cli(ctx, verbose):
    """ergomax: maximum ergodic averages, sub-actions, pressure and convex duality."""
    if verbose:
        logging.basicConfig(
            level=logging.DEBUG,
            format="%(name)s: %(message)s",
            handlers=[RichHandler(console=err_console, show_path=False)],
        )
    if ctx.invoked_subcommand is None:
        try:
            tolerances = resolve_tolerances()
        except ErgomaxError as e:
            render_error(str(e))
            sys.exit(e.exit_code)
        commands = {name: (cmd.get_short_help_str(60)) for name, cmd in sorted(cli.commands.items())}
        render_dashboard(commands, tolerances, BUILTIN_SYSTEMS, get_telemetry().get_summary(history=True))


@cli.command()
@system_option
@click.option("--method", type=click.Choice(["karp", "brute"]), default="karp", show_default=True)
@output_options
def alpha(system_ref, method, fmt, tol_items, out):
    """Maximum ergodic average and a witness cycle."""
    method = "brute_force" if method == "brute" else method
    _run("alpha", {"system": system_ref, "method": method}, fmt, tol_items, out)


@cli.command("three-point")
@click.option("--a", "a", type=float, required=True, help="Value of the potential on the symbol a (not 0 or 1).")
@click.option("--horizon", type=int, default=12, show_default=True)
@output_options
def three_point(a, horizon, fmt, tol_items, out):
    """Three-point shift where every minimax member equals 1/2."""
    _run("three-point", {"a": a, "horizon": horizon}, fmt, tol_items, out)


@cli.command()
@system_option
@click.option("--horizon", type=int, default=50, show_default=True)
@output_options
def horizons(system_ref, horizon, fmt, tol_items, out):
    """sup over points of S_n/n for n = 1..N, with the running infimum."""
    _run("horizons", {"system": system_ref, "horizon": horizon}, fmt, tol_items, out)


@cli.command()
@system_option
@click.option("--point", "point_text", required=True, metavar="PRE|PERIOD", help='e.g. "a|1,0".')
@click.option("--horizon", type=int, default=12, show_default=True, help="Length of the emitted series.")
@output_options
def point(system_ref, point_text, horizon, fmt, tol_items, out):
    """Exact inf/sup over n of the time averages of an eventually periodic point."""
    _run("point", {"system": system_ref, "point": point_text, "horizon": horizon}, fmt, tol_items, out)


@cli.command()
@system_option
@output_options
def subaction(system_ref, fmt, tol_items, out):
    """Sub-action psi and the duality check against alpha."""
    _run("subaction", {"system": system_ref}, fmt, tol_items, out)


@cli.command()
@system_option
@click.option("--kind", type=click.Choice(registry.list_kinds()), default="spectral", show_default=True)
@click.option("--samples", type=int, default=20, show_default=True, help="Random Markov measures for VP1.")
@click.option("--seed", type=int, default=0, show_default=True)
@output_options
def pressure(system_ref, kind, samples, seed, fmt, tol_items, out):
    """Pressure of the system potential; VP1 check for the spectral kind."""
    _run("pressure", {"system": system_ref, "kind": kind, "samples": samples, "seed": seed}, fmt, tol_items, out)


@cli.command()
@system_option
@click.option(
    "--measure",
    type=click.Choice(["parry", "gibbs", "bernoulli", "random"]),
    default="parry",
    show_default=True,
)
@click.option("--probs", default=None, help="Comma-separated symbol probabilities (bernoulli).")
@click.option("--seed", type=int, default=0, show_default=True, help="Seed for the random measure.")
@output_options
def entropy(system_ref, measure, probs, seed, fmt, tol_items, out):
    """Entropy recovered as a conjugate of pressure vs the closed form."""
    _run("entropy", {"system": system_ref, "measure": measure, "probs": probs, "seed": seed}, fmt, tol_items, out)


@cli.command()
@click.option("--instance", "instance_path", required=True, type=click.Path(dir_okay=False), metavar="FILE")
@output_options
def fenchel(instance_path, fmt, tol_items, out):
    """Fenchel-Rockafellar gap, biconjugate check or bilinear minimax on a JSON instance."""
    _run("fenchel", {"instance": instance_path}, fmt, tol_items, out)


@cli.command()
@system_option
@click.option("--kind", type=click.Choice(registry.list_kinds()), default="spectral", show_default=True)
@click.option("--samples", type=int, default=20, show_default=True, help="Random potential pairs.")
@click.option("--depth", type=click.Choice(["1", "2"]), default="1", show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@output_options
def axioms(system_ref, kind, samples, depth, seed, fmt, tol_items, out):
    """Check monotonicity, translation, convexity and cohomology invariance."""
    inputs = {"system": system_ref, "kind": kind, "samples": samples, "depth": int(depth), "seed": seed}
    _run("axioms", inputs, fmt, tol_items, out)


@cli.command()
@click.option("--matrix", "matrix_path", required=True, type=click.Path(dir_okay=False), metavar="FILE")
@output_options
def minimax(matrix_path, fmt, tol_items, out):
    """inf over rows of sup vs sup over columns of inf for a JSON matrix."""
    _run("minimax", {"matrix": matrix_path}, fmt, tol_items, out)


if __name__ == "__main__":
    cli()
