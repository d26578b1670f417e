"""
Command Line Interface for cvnn-cost
"""

import functools
import logging
import sys
from pathlib import Path

import click
from rich.console import Console
from rich.table import Table

from . import __version__
from .analysis.cost_model import asymptotic_class, cost, formula_text, sweep
from .core.errors import InvalidSpecError, NotApplicableError, TableError
from .core.specs import ArchKind, AsymptoticRegime, Mode, spec_from_fields
from .generators.report_generator import ReportGenerator, cell_mark, format_count
from .generators.sweep_writer import write_chart, write_csv
from .harness.asymptote import empirical_asymptote
from .harness.use_cases import load_use_case_table, reproduce_use_cases
from .harness.verify import SpecGenerator, summarize, verify_counts
from .utils.config import SEED_ENV, load_config, load_run_config, resolve_seed, run_config_spec
from .utils.log import setup_logging

console = Console()
err_console = Console(stderr=True)
logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INVALID = 2
EXIT_NOT_APPLICABLE = 3
EXIT_IO = 4

ARCH_CHOICES = [arch.value for arch in ArchKind]
REGIME_CHOICES = [regime.value for regime in AsymptoticRegime]

# Formula the verify command checks against; tests swap it for a corrupted one
verify_formula = cost


class VerificationFailed(Exception):
    pass


def exit_codes(func):
    """Map library exceptions to the documented exit codes"""
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except VerificationFailed as exc:
            err_console.print(f"[red]✗[/red] {exc}")
            sys.exit(EXIT_VERIFY_FAILED)
        except NotApplicableError as exc:
            err_console.print(f"[yellow]not applicable:[/yellow] {exc}")
            sys.exit(EXIT_NOT_APPLICABLE)
        except (InvalidSpecError, TableError) as exc:
            err_console.print(f"[red]invalid input:[/red] {exc}")
            sys.exit(EXIT_INVALID)
        except OSError as exc:
            err_console.print(f"[red]I/O error:[/red] {exc}")
            sys.exit(EXIT_IO)
    return wrapper


def parse_int_list(value):
    """'97' -> 97, '256,500,16' -> [256, 500, 16]"""
    if value is None:
        return None
    parts = [p.strip() for p in str(value).split(",") if p.strip()]
    try:
        numbers = [int(p) for p in parts]
    except ValueError:
        raise InvalidSpecError(f"expected an integer or comma-separated integers, got '{value}'") from None
    if not numbers:
        raise InvalidSpecError("empty integer list")
    if len(numbers) == 1 and "," not in str(value):
        return numbers[0]
    return numbers


def parse_range(value: str) -> range:
    """start:stop:step with an exclusive stop"""
    try:
        parts = [int(p) for p in value.split(":")]
    except ValueError:
        raise InvalidSpecError(f"--n-range must be start:stop[:step], got '{value}'") from None
    if len(parts) == 2:
        parts.append(1)
    if len(parts) != 3:
        raise InvalidSpecError(f"--n-range must be start:stop[:step], got '{value}'")
    start, stop, step = parts
    if start < 1 or step < 1:
        raise InvalidSpecError("--n-range needs start >= 1 and step >= 1")
    return range(start, stop, step)


@click.group()
@click.version_option(version=__version__)
@click.option("--config", "config_path", type=click.Path(dir_okay=False), default=None,
              help="YAML settings file (default: ./config.yaml when present)")
@click.option("--verbose", is_flag=True, help="Debug logging")
@click.pass_context
@exit_codes
def main(ctx, config_path, verbose):
    """cvnn-cost: real-multiplication cost models for complex-valued neural networks"""
    config = load_config(config_path)
    setup_logging("DEBUG" if verbose else config["logging"]["level"], config["logging"]["file"])
    ctx.obj = {"config": config}


@main.command("cost")
@click.option("--arch", type=click.Choice(ARCH_CHOICES), help="Architecture")
@click.option("--inputs", type=int, help="Complex inputs P")
@click.option("--outputs", type=int, help="Complex outputs R")
@click.option("--neurons", help="N for shallow, or I^1..I^L (comma list ending with outputs)")
@click.option("--bottlenecks", help="PT-RBF deep: O^1..O^L (comma list ending with outputs)")
@click.option("--mode", type=click.Choice(["training", "inference", "both"]), default=None)
@click.option("--config", "run_config", type=click.Path(dir_okay=False), default=None,
              help="RunConfig YAML file instead of the flags")
@exit_codes
def cmd_cost(arch, inputs, outputs, neurons, bottlenecks, mode, run_config):
    """Closed-form cost of one architecture"""
    if run_config:
        data = load_run_config(run_config)
        spec = run_config_spec(data)
        mode = mode or data["mode"]
    else:
        if arch is None or inputs is None or outputs is None or neurons is None:
            raise InvalidSpecError("--arch, --inputs, --outputs and --neurons are required")
        spec = spec_from_fields(arch, inputs, outputs, parse_int_list(neurons), parse_int_list(bottlenecks))
    mode = mode or "both"

    if mode == "both":
        for m in (Mode.TRAINING, Mode.INFERENCE):
            click.echo(f"{m.value} {cost(spec, m)}")
    else:
        click.echo(str(cost(spec, Mode.parse(mode))))


@main.command("sweep")
@click.option("--archs", "archs", multiple=True, type=click.Choice(ARCH_CHOICES),
              help="Architecture (repeatable; default all six)")
@click.option("--mode", type=click.Choice(["training", "inference"]), default="training")
@click.option("--inputs", type=int, default=1, help="Complex inputs P")
@click.option("--outputs", type=int, default=1, help="Complex outputs R")
@click.option("--n-range", "n_range", required=True, help="start:stop:step (stop exclusive)")
@click.option("--out", "out", required=True, type=click.Path(dir_okay=False), help="CSV file")
@click.option("--plot", type=click.Path(dir_okay=False), default=None, help="SVG chart file")
@exit_codes
def cmd_sweep(archs, mode, inputs, outputs, n_range, out, plot):
    """Tabulate shallow costs across hidden sizes"""
    selected = [ArchKind.parse(a) for a in archs] or list(ArchKind)
    if inputs < 1 or outputs < 1:
        raise InvalidSpecError("--inputs and --outputs must be >= 1")
    rows = sweep(selected, Mode.parse(mode), inputs, outputs, parse_range(n_range))
    write_csv(rows, out)
    if plot:
        write_chart(rows, plot, title=f"{mode} cost, P={inputs}, R={outputs}")
    err_console.print(f"[green]✓[/green] {len(rows)} rows written to {out}")


@main.command("verify")
@click.option("--trials", type=int, default=100, help="Random shallow specs per architecture")
@click.option("--deep-trials", "deep_trials", type=int, default=None,
              help="Random deep specs per deep-capable architecture")
@click.option("--seed", type=int, default=None, help=f"Seed (default: ${SEED_ENV} or config)")
@click.pass_context
@exit_codes
def cmd_verify(ctx, trials, deep_trials, seed):
    """Check metered counts against the closed forms on random specs"""
    config = ctx.obj["config"]
    bounds = config["verify"]
    if trials < 1:
        raise InvalidSpecError("--trials must be >= 1")
    deep_trials = bounds["deep_trials"] if deep_trials is None else deep_trials
    generator = SpecGenerator(
        seed=resolve_seed(seed, config),
        max_inputs=bounds["max_inputs"],
        max_outputs=bounds["max_outputs"],
        max_neurons=bounds["max_neurons"],
        max_layers=bounds["max_layers"],
    )
    reports = verify_counts(generator, trials, deep_trials=deep_trials, formula=verify_formula)
    totals = summarize(reports)

    for report in reports:
        if not report.match:
            click.echo(report.describe())
    click.echo(f"{totals['matching_specs']}/{totals['specs']} specs match ({totals['reports']} reports)")
    if totals["matching_reports"] != totals["reports"]:
        raise VerificationFailed(f"{totals['reports'] - totals['matching_reports']} reports mismatch")


@main.command("reproduce")
@click.option("--table", "table_path", type=click.Path(dir_okay=False), default=None,
              help="Use-case table JSON (default: bundled table)")
@click.option("--markdown", type=click.Path(dir_okay=False), default=None, help="Also write a Markdown report")
@exit_codes
def cmd_reproduce(table_path, markdown):
    """Recompute the published application costs"""
    table = load_use_case_table(table_path)
    report = reproduce_use_cases(table)
    titles = {case.name: case.title for case in table.use_cases}

    rich_table = Table(title="Real multiplications per application")
    rich_table.add_column("CVNN", style="cyan")
    for case in table.use_cases:
        rich_table.add_column(f"{case.name}\ntraining", justify="right")
        rich_table.add_column(f"{case.name}\ninference", justify="right")
    for arch in ArchKind:
        row = [arch.label]
        for case in table.use_cases:
            for mode in (Mode.TRAINING, Mode.INFERENCE):
                try:
                    cell = report.cell(case.name, arch, mode)
                except KeyError:
                    row.append("")
                    continue
                value = cell.computed if cell.computed is not None else cell.expected
                row.append(f"{format_count(value)} {cell_mark(cell)}")
        rich_table.add_row(*row)
    console.print(rich_table)

    for name, modes in report.cheapest.items():
        labels = ", ".join(f"{mode.value} {arch.label if arch else '-'}" for mode, arch in modes.items())
        console.print(f"cheapest for {name}: {labels}")

    derived = report.matched + len(report.mismatched)
    console.print(f"{report.matched}/{derived} derived cells match, {report.open_cells} open")

    if markdown:
        ReportGenerator().write_markdown(report, markdown, titles)
    if not report.ok:
        for cell in report.mismatched:
            click.echo(f"{cell.config.use_case}/{cell.config.arch.value} {cell.mode.value}: "
                       f"expected {cell.expected}, computed {cell.computed}")
        raise VerificationFailed(f"{len(report.mismatched)} derived cells mismatch")


@main.command("asym")
@click.option("--arch", required=True, type=click.Choice(ARCH_CHOICES))
@click.option("--regime", required=True, type=click.Choice(REGIME_CHOICES))
@click.option("--empirical", is_flag=True, help="Also fit the log-log slope of the exact cost")
@click.option("--mode", type=click.Choice(["training", "inference"]), default="training")
@click.pass_context
@exit_codes
def cmd_asym(ctx, arch, regime, empirical, mode):
    """Asymptotic order of an architecture under a regime"""
    arch = ArchKind.parse(arch)
    regime = AsymptoticRegime.parse(regime)
    order = asymptotic_class(arch, regime)
    click.echo(order.big_o)
    if empirical:
        settings = ctx.obj["config"]["asymptote"]
        key = {
            AsymptoticRegime.SHALLOW_N_DOMINANT: "shallow_exponents",
            AsymptoticRegime.SHALLOW_BALANCED: "shallow_exponents",
            AsymptoticRegime.DEEP_N_DOMINANT: "deep_n_dominant_exponents",
            AsymptoticRegime.DEEP_BALANCED: "deep_balanced_exponents",
        }[regime]
        low, high = settings[key]
        fit = empirical_asymptote(arch, regime, range(low, high + 1), Mode.parse(mode),
                                  io=settings["n_dominant_io"], layers=settings["n_dominant_layers"])
        click.echo(f"slope {fit.slope:.4f} -> {fit.order.big_o}")
        shallow = regime in (AsymptoticRegime.SHALLOW_N_DOMINANT, AsymptoticRegime.SHALLOW_BALANCED)
        console.print(f"[dim]{formula_text(arch, Mode.parse(mode), deep=not shallow)}[/dim]")


if __name__ == "__main__":
    main()
