"""Suite execution: instance stream, parallel partitions, shrinking and replay lines."""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor

from structlog import get_logger

from powerdomains.core.config import settings
from powerdomains.core.exceptions import PreconditionError
from powerdomains.schemas.report import FailureRecord, SuiteReport
from powerdomains.services.lawcheck.config import GenConfig
from powerdomains.services.lawcheck.diagrams import DiagramFailure, evaluate, fails_with
from powerdomains.services.lawcheck.generators import InstanceGenerator
from powerdomains.services.lawcheck.specimen import Specimen, shrink
from powerdomains.services.lawcheck.suites import SUITES, Suite, get_suite

logger = get_logger()

# (index, status, failures); status is "passed", "failed" or "skipped"
Outcome = tuple[int, str, list[FailureRecord]]


def replay_line(suite: Suite, cfg: GenConfig, index: int) -> str:
    return f"laws {suite.name} {cfg.replay_flags()} --replay {index}"


def _record(suite: Suite, cfg: GenConfig, index: int, failure: DiagramFailure, specimen: Specimen | None) -> FailureRecord:
    return FailureRecord(
        index=index,
        diagram=failure.diagram,
        kind=failure.kind,
        detail=failure.detail,
        specimen=None if specimen is None else specimen.to_document(),
        replay=replay_line(suite, cfg, index),
    )


def run_instance(suite: Suite, cfg: GenConfig, index: int, shrink_failures: bool = True) -> Outcome:
    """Build instance ``index`` of the stream and evaluate every diagram on it."""
    try:
        specimen = suite.build(InstanceGenerator(cfg, index))
    except PreconditionError:
        return index, "skipped", []
    except Exception as exc:
        failure = DiagramFailure("build", type(exc).__name__, str(exc))
        return index, "failed", [_record(suite, cfg, index, failure, None)]

    failures = evaluate(suite.diagrams, specimen)
    if not failures:
        return index, "passed", []

    records = []
    for failure in failures:
        witness = specimen
        if shrink_failures:
            witness = shrink(specimen, fails_with(suite.diagrams, failure.key))
        records.append(_record(suite, cfg, index, failure, witness))
        logger.warning("Law failed", suite=suite.name, index=index, diagram=failure.diagram, kind=failure.kind)
    return index, "failed", records


def _run_partition(name: str, cfg: GenConfig, indices: list[int], shrink_failures: bool) -> list[Outcome]:
    suite = get_suite(name)
    return [run_instance(suite, cfg, index, shrink_failures) for index in indices]


def run_suite(
    name: str,
    cfg: GenConfig | None = None,
    jobs: int | None = None,
    replay: int | None = None,
    shrink_failures: bool = True,
) -> SuiteReport:
    """Run a named suite; worker ``k`` of ``jobs`` takes the indices congruent to ``k``."""
    suite = get_suite(name)
    cfg = cfg or GenConfig()
    jobs = max(1, jobs or settings.JOBS)
    count = suite.default_count if cfg.instance_count is None else cfg.instance_count
    indices = [replay] if replay is not None else list(range(count))

    logger.info("Suite started", suite=name, instances=len(indices), jobs=jobs, seed=cfg.seed)
    started = time.perf_counter()
    if jobs == 1 or len(indices) < 2:
        outcomes = _run_partition(name, cfg, indices, shrink_failures)
    else:
        partitions = [indices[k::jobs] for k in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [
                pool.submit(_run_partition, name, cfg, part, shrink_failures) for part in partitions if part
            ]
            outcomes = [outcome for future in futures for outcome in future.result()]
    outcomes.sort(key=lambda outcome: outcome[0])

    report = SuiteReport(
        suite=name,
        seed=cfg.seed,
        max_points=cfg.max_points,
        instances=len(outcomes),
        passed=sum(1 for _, status, _ in outcomes if status == "passed"),
        failed=sum(1 for _, status, _ in outcomes if status == "failed"),
        skipped=sum(1 for _, status, _ in outcomes if status == "skipped"),
        failures=[record for _, _, records in outcomes for record in records],
        wall_time=time.perf_counter() - started,
    )
    logger.info(
        "Suite finished", suite=name, passed=report.passed, failed=report.failed, skipped=report.skipped
    )
    return report


def suite_names() -> list[str]:
    return list(SUITES)
