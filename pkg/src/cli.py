"""Command-line interface for the attribute-autonomy simulator."""

import logging
import sys
from pathlib import Path

import click

from .agent import run_agent
from .parser import parse_scenario_file
from .report import TextRenderer
from .sweep import render_sweep, run_sweep
from .taxonomy import BUILTIN_MODELS, SELF_DESCRIPTOR, attribute_verdicts, classify
from .trace import emit_trace


def _fail(error: Exception, verbose: bool) -> None:
    click.echo(click.style(f"Error: {error}", fg='red', bold=True), err=True)
    if verbose:
        import traceback
        click.echo(traceback.format_exc(), err=True)
    sys.exit(1)


def _write(path: Path, text: str) -> None:
    # Bytes keep the output identical across platforms.
    path.write_bytes(text.encode('utf-8'))


@click.group()
@click.option(
    '--verbose',
    '-v',
    is_flag=True,
    help='Verbose output'
)
@click.pass_context
def main(ctx, verbose):
    """
    Simulate an agent autonomous with regard to its mobility.

    Examples:

    \b
        # Run a scenario and write report.txt and trace.tsv
        autonomy-sim run scenarios/ref6.scenario --out out

    \b
        # Branch frequencies over 5000 seeds
        autonomy-sim sweep scenarios/default.scenario --runs 5000 --seed 1

    \b
        # Autonomy classification of the scenario's agent
        autonomy-sim classify scenarios/default.scenario
    """
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    ctx.ensure_object(dict)
    ctx.obj['verbose'] = verbose


@main.command()
@click.argument('scenario_file', type=click.Path(exists=True, dir_okay=False))
@click.option(
    '--out',
    default=None,
    help='Output directory (default: output_dir from the scenario)',
    type=click.Path(file_okay=False)
)
@click.pass_context
def run(ctx, scenario_file, out):
    """Run one simulation and write report.txt and trace.tsv."""
    verbose = ctx.obj['verbose']
    try:
        click.echo(click.style("Attribute Autonomy Simulator", fg='blue', bold=True))
        click.echo(f"Loading scenario {scenario_file}...")
        scenario = parse_scenario_file(scenario_file)

        if verbose:
            click.echo(f"Seed: {scenario.seed}")
            click.echo(f"Sites: {', '.join(scenario.network.site_names)}")
            click.echo(f"Mobility policies: {', '.join(scenario.mobility_policies.kinds)}")

        report, events = run_agent(scenario)

        output_dir = Path(out if out is not None else scenario.output_dir)
        output_dir.mkdir(parents=True, exist_ok=True)
        _write(output_dir / "report.txt", TextRenderer().render_report(report))
        _write(output_dir / "trace.tsv", emit_trace(events))

        click.echo(click.style(
            f"✓ Agent halted at {report.halted_at} ({report.halt_reason}) after {report.steps} step(s)",
            fg='green'
        ))
        click.echo(f"  - {len(report.visited)} visited")
        if report.inaccessible:
            click.echo(click.style(f"  - {len(report.inaccessible)} inaccessible", fg='yellow'))
        if report.prohibited:
            click.echo(click.style(f"  - {len(report.prohibited)} prohibited", fg='yellow'))
        if report.dysfunctions:
            click.echo(click.style(f"  - {len(report.dysfunctions)} dysfunction(s)", fg='red'))
        click.echo(f"Output: {output_dir.absolute()}")

    except Exception as e:
        _fail(e, verbose)


@main.command()
@click.argument('scenario_file', type=click.Path(exists=True, dir_okay=False))
@click.option('--runs', required=True, type=click.IntRange(min=1), help='Number of runs K')
@click.option('--seed', default=None, type=click.IntRange(min=0), help='First seed (default: scenario seed)')
@click.option('--workers', default=1, type=click.IntRange(min=1), help='Worker processes')
@click.pass_context
def sweep(ctx, scenario_file, runs, seed, workers):
    """Run K simulations on consecutive seeds and print branch frequencies."""
    verbose = ctx.obj['verbose']
    try:
        scenario = parse_scenario_file(scenario_file)
        base_seed = scenario.seed if seed is None else seed
        summary = run_sweep(scenario, runs, base_seed, workers=workers)
        click.echo(render_sweep(summary), nl=False)
    except Exception as e:
        _fail(e, verbose)


@main.command(name='classify')
@click.argument('scenario_file', type=click.Path(exists=True, dir_okay=False))
@click.pass_context
def classify_command(ctx, scenario_file):
    """Print the autonomy taxonomy and the scenario agent's attribute verdicts."""
    verbose = ctx.obj['verbose']
    try:
        scenario = parse_scenario_file(scenario_file)
        text = TextRenderer().render(
            "classify.txt.jinja2",
            rows=[(model.name, classify(model)) for model in BUILTIN_MODELS],
            own=classify(SELF_DESCRIPTOR),
            verdicts=attribute_verdicts(scenario),
        )
        click.echo(text, nl=False)
    except Exception as e:
        _fail(e, verbose)


if __name__ == '__main__':
    main()
