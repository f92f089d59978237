"""Law suite command."""

import click

from powerdomains.cli.base import emit, styled
from powerdomains.core.config import settings
from powerdomains.core.exceptions import EXIT_LAW_FAILURES
from powerdomains.schemas.report import SuiteReport
from powerdomains.services.lawcheck.config import GenConfig
from powerdomains.services.lawcheck.runner import run_suite, suite_names
from powerdomains.services.lawcheck.suites import get_suite


def _summary(report: SuiteReport) -> str:
    status = "ok" if report.ok else "FAILED"
    line = (
        f"{report.suite}: {report.instances} instances, {report.passed} passed, "
        f"{report.failed} failed, {report.skipped} skipped ({report.wall_time:.2f}s)"
    )
    return f"{styled(status, report.ok)} {line}"


def _print_human(report: SuiteReport) -> None:
    click.echo(_summary(report))
    for failure in report.failures:
        click.echo(f"  [{failure.index}] {failure.diagram} ({failure.kind}): {failure.detail}")
        click.echo(f"      replay: {failure.replay}")


@click.command("laws")
@click.argument("suite")
@click.option("--seed", type=click.IntRange(0, 2**64 - 1), default=None, help="Generator seed.")
@click.option("--max-points", type=click.IntRange(0), default=None, help="Largest generated space.")
@click.option("--count", type=click.IntRange(0), default=None, help="Instances per suite.")
@click.option("--jobs", type=click.IntRange(1), default=None, help="Worker processes.")
@click.option("--json", "as_json", is_flag=True, help="Print the report as JSON.")
@click.option("--replay", type=click.IntRange(0), default=None, help="Re-run a single stream index.")
@click.option("--denominator-bound", type=click.IntRange(1), default=None, help="Largest weight denominator.")
@click.option("--allow-infinity", is_flag=True, default=False, help="Generate infinite weights.")
@click.option("--adversarial", is_flag=True, default=False, help="Perturb valuation tables.")
@click.pass_context
def laws(
    ctx: click.Context,
    suite: str,
    seed: int | None,
    max_points: int | None,
    count: int | None,
    jobs: int | None,
    as_json: bool,
    replay: int | None,
    denominator_bound: int | None,
    allow_infinity: bool,
    adversarial: bool,
) -> None:
    """Run a law suite by name, or every suite with ``all``."""
    names = suite_names() if suite == "all" else [get_suite(suite).name]
    overrides = {
        "seed": seed,
        "max_points": max_points,
        "instance_count": count,
        "weight_denominator_bound": denominator_bound,
    }
    cfg = GenConfig(
        **{key: value for key, value in overrides.items() if value is not None},
        allow_infinity=allow_infinity or settings.ALLOW_INFINITY,
        adversarial=adversarial,
    )

    reports = [run_suite(name, cfg, jobs=jobs, replay=replay) for name in names]
    if as_json:
        emit([report.model_dump() for report in reports] if suite == "all" else reports[0])
    else:
        for report in reports:
            _print_human(report)
    if any(not report.ok for report in reports):
        ctx.exit(EXIT_LAW_FAILURES)
