"""Command-line interface.

Exit codes for ``check``: 0 when the computed causes match the recorded
intuition (or no intuition is recorded), 1 on a mismatch, 2 on a parse
error, 3 when a search exceeds the enumeration cap.
"""

from __future__ import annotations

import sys
import time
from pathlib import Path

import click

from .bench import render_report, run_bench
from .comparators import hph_causes
from .dsl import ParseError, parse_case
from .engine import EngineOptions, intentional_causes
from .model import Event, SearchTooLargeError
from .verification import run_verify

__all__ = ["main"]


def _fmt(events: frozenset[Event] | None) -> str:
    if events is None:
        return "-"
    if not events:
        return "{}"
    return ", ".join(ev.render() for ev in sorted(events))


@click.group()
def main() -> None:
    """Actual-causation analysis over deterministic structural models."""


@main.command()
@click.argument("case_file", type=click.Path(exists=True, dir_okay=False))
@click.option(
    "--definition",
    type=click.Choice(["primary", "hph", "all"]),
    default="primary",
    show_default=True,
    help="Which cause definition(s) to evaluate.",
)
@click.option(
    "--variant",
    type=click.Choice(["3", "3prime"]),
    default="3",
    show_default=True,
    help="Abnormality clause variant (3prime contrasts one event at a time).",
)
@click.option(
    "--mode",
    type=click.Choice(["reliable", "general"]),
    default=None,
    help="Override the scenario's declared mode.",
)
@click.option("--verbose", is_flag=True, help="Show witnesses and chains.")
def check(case_file: str, definition: str, variant: str, mode: str | None, verbose: bool) -> None:
    """Analyze a single case file and compare against its intuition."""
    try:
        case = parse_case(Path(case_file).read_text(encoding="utf-8"))
    except ParseError as err:
        click.echo(f"parse error: {err}", err=True)
        sys.exit(2)

    options = EngineOptions(mode=mode, abnormality_variant=variant)
    mismatch = False
    try:
        if definition in ("primary", "all"):
            causes = intentional_causes(case.scenario, case.effect, options)
            click.echo(f"causes: {_fmt(causes)}")
            if verbose:
                from .engine import analyze

                analysis = analyze(case.scenario, case.effect, options)
                for var in sorted(analysis.scenario.model.variables):
                    if var == case.effect.var:
                        continue
                    event = Event(var, analysis.scenario.actual_value(var))
                    verdict = analysis.verdict_for(event)
                    chain = (
                        " -> ".join(verdict.chain) if verdict.chain else "-"
                    )
                    click.echo(
                        f"  {event.render()}: cause={verdict.is_cause} "
                        f"plan={_fmt(verdict.plan)} chain={chain} "
                        f"({verdict.reason})"
                    )
            if case.intuition is not None and causes != case.intuition:
                mismatch = True
        if definition in ("hph", "all"):
            result = hph_causes(case.scenario, case.effect)
            click.echo(f"contrastive causes: {_fmt(result.events)}")
            if verbose:
                for verdict in result.verdicts:
                    names = ", ".join(sorted(verdict.contrast_set))
                    click.echo(
                        f"  {verdict.event.render()}: contrast set "
                        f"{{{names}}}"
                    )
            if definition == "hph" and case.intuition is not None:
                if result.events != case.intuition:
                    mismatch = True
    except SearchTooLargeError as err:
        click.echo(f"search too large: {err}", err=True)
        sys.exit(3)

    if case.intuition is not None:
        click.echo(f"intuition: {_fmt(case.intuition)}")
    sys.exit(1 if mismatch else 0)


@main.command()
@click.argument("directory", type=click.Path(exists=True, file_okay=False))
@click.option(
    "--format",
    "fmt",
    type=click.Choice(["plain", "json", "csv", "md"]),
    default="plain",
    show_default=True,
)
@click.option(
    "--out",
    type=click.Path(dir_okay=False),
    default=None,
    help="Write the report to a file instead of stdout.",
)
def bench(directory: str, fmt: str, out: str | None) -> None:
    """Run every case file in a directory and summarize the results."""
    start = time.perf_counter()
    try:
        report = run_bench(directory)
    except ParseError as err:
        click.echo(f"parse error: {err}", err=True)
        sys.exit(2)
    except SearchTooLargeError as err:
        click.echo(f"search too large: {err}", err=True)
        sys.exit(3)
    elapsed = time.perf_counter() - start
    text = render_report(report, fmt)
    if out is None:
        click.echo(text, nl=False)
    else:
        Path(out).write_text(text, encoding="utf-8")
    click.echo(f"completed in {elapsed:.2f}s", err=True)
    failed = report.primary_mismatches
    sys.exit(1 if failed else 0)


@main.command()
@click.option("--models", type=int, default=1000, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--max-vars", type=int, default=6, show_default=True)
def verify(models: int, seed: int, max_vars: int) -> None:
    """Cross-check the engine against brute-force oracles on random models."""
    start = time.perf_counter()
    report = run_verify(models=models, seed=seed, max_vars=max_vars)
    click.echo(report.render(), nl=False)
    click.echo(f"completed in {time.perf_counter() - start:.2f}s", err=True)
    sys.exit(0 if report.passed else 1)
