"""Generic commuting-diagram engine."""

from __future__ import annotations

from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass
from typing import Any

from structlog import get_logger

from powerdomains.core.exceptions import PreconditionError
from powerdomains.services.lawcheck.specimen import Specimen

logger = get_logger()

Side = Callable[[Specimen], Any]


def _always(_: Specimen) -> bool:
    return True


@dataclass(frozen=True)
class Diagram:
    """Two routes around a square; it commutes when both sides compare equal."""

    name: str
    left: Side
    right: Side
    applies: Callable[[Specimen], bool] = _always


def prop(name: str, predicate: Callable[[Specimen], bool], applies: Callable[[Specimen], bool] = _always) -> Diagram:
    """A single-sided check, read as ``predicate == True``."""
    return Diagram(name, predicate, lambda _: True, applies)


@dataclass(frozen=True)
class DiagramFailure:
    diagram: str
    kind: str
    detail: str

    @property
    def key(self) -> tuple[str, str]:
        return self.diagram, self.kind


def _show(value: Any) -> str:
    text = repr(value)
    return text if len(text) <= 400 else text[:397] + "..."


def evaluate(diagrams: Iterable[Diagram], specimen: Specimen) -> list[DiagramFailure]:
    """Failures of ``diagrams`` on ``specimen``.

    A precondition error skips the diagram; any other exception is a failure
    of kind ``<exception class>``.
    """
    failures = []
    for diagram in diagrams:
        try:
            if not diagram.applies(specimen):
                continue
            left = diagram.left(specimen)
            right = diagram.right(specimen)
        except PreconditionError:
            continue
        except Exception as exc:
            failures.append(DiagramFailure(diagram.name, type(exc).__name__, str(exc)))
            continue
        if left != right:
            failures.append(DiagramFailure(diagram.name, "mismatch", f"{_show(left)} != {_show(right)}"))
    if failures:
        logger.debug("Diagrams failed", diagrams=[f.diagram for f in failures])
    return failures


def fails_with(diagrams: Sequence[Diagram], key: tuple[str, str]) -> Callable[[Specimen], bool]:
    """Predicate: the named diagram still fails the same way."""
    named = [d for d in diagrams if d.name == key[0]]

    def predicate(specimen: Specimen) -> bool:
        return any(f.key == key for f in evaluate(named, specimen))

    return predicate
