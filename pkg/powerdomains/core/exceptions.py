"""Exception hierarchy and CLI exception handlers."""

from __future__ import annotations

import json
from collections.abc import Callable
from typing import TYPE_CHECKING, Any

import click
from structlog import get_logger

if TYPE_CHECKING:
    from powerdomains.cli.base import HandlingGroup

logger = get_logger()


class PowerdomainsError(Exception):
    """Base exception; ``witness`` holds the data that exhibits the problem."""

    def __init__(self, message: str, **witness: Any) -> None:
        super().__init__(message)
        self.witness = witness


# Exit code 1


class DocumentError(PowerdomainsError):
    """Malformed JSON or a document that does not match its schema."""


# Exit code 2


class AxiomViolation(PowerdomainsError):
    """Input data violates a structural axiom."""


class NotATopology(AxiomViolation):
    """Open family misses ∅/X or is not closed under union/intersection."""


class NotAPreorder(AxiomViolation):
    """Relation is not reflexive or not transitive."""


class NotContinuous(AxiomViolation):
    """Preimage of an open set is not open."""


class NotClosed(AxiomViolation):
    """Subset is not a down-set of the specialization preorder."""


class NotOpen(AxiomViolation):
    """Subset is not an up-set of the specialization preorder."""


class ShapeMismatch(AxiomViolation):
    """Operands live on different spaces."""


class NotAValidFunctional(AxiomViolation):
    """Boolean table on opens is not strict or not join-preserving."""


class NotClosedFamily(AxiomViolation):
    """Family of closed sets is not down-closed under inclusion."""


class NotStrict(AxiomViolation):
    """Valuation is nonzero on the empty set."""


class NotMonotone(AxiomViolation):
    """Valuation decreases along an inclusion of opens."""


class NotModular(AxiomViolation):
    """Valuation violates the modular law."""


class NotLowerSemicontinuous(AxiomViolation):
    """Function has a non-open upper level set."""


class NotAKernel(AxiomViolation):
    """Point-to-valuation table is not continuous into VY."""


class InvalidSecondOrder(AxiomViolation):
    """Molecular second-order valuation has a non-positive weight or mixed spaces."""


class NotNormalized(AxiomViolation):
    """Valuation or mixture does not have total mass one."""


class OrderNotClosed(AxiomViolation):
    """Auxiliary preorder's graph is not closed in the product."""


# Exit code 3


class PreconditionError(PowerdomainsError):
    """Operation precondition does not hold."""


class PreconditionFailed(PreconditionError):
    """Generic precondition failure."""


class InfiniteMass(PreconditionError):
    """Valuation has infinite total mass."""


class InfinityIndeterminate(PreconditionError):
    """Inclusion-exclusion would need ∞ − ∞."""


class NotAnHAlgebra(PreconditionError):
    """Structure map failed the H-algebra verdict."""


class NotAFailure(PreconditionError):
    """Shrinking was asked to minimise an instance that passes."""


# Exit code 5


class UnknownSuite(PowerdomainsError):
    """Law suite name is not registered."""


# Theorem-backed cross-checks


class Anomaly(PowerdomainsError):
    """Two formulations that a theorem proves equal disagree."""


class NegativeWeight(Anomaly):
    """Möbius inversion produced a negative point weight."""


EXIT_DOCUMENT = 1
EXIT_AXIOM = 2
EXIT_PRECONDITION = 3
EXIT_LAW_FAILURES = 4
EXIT_UNKNOWN_SUITE = 5
EXIT_INTERNAL = 70

Handler = Callable[[PowerdomainsError | Exception], int]


def _error_body(exc: Exception) -> str:
    witness = getattr(exc, "witness", {})
    return json.dumps(
        {"error": type(exc).__name__, "detail": str(exc), "witness": witness},
        default=str,
        sort_keys=True,
    )


def document_error_handler(exc: Exception) -> int:
    """Handle DocumentError."""
    logger.warning("Malformed document", error=str(exc))
    click.echo(_error_body(exc), err=True)
    return EXIT_DOCUMENT


def axiom_violation_handler(exc: Exception) -> int:
    """Handle AxiomViolation."""
    logger.warning("Axiom violation", error=type(exc).__name__, detail=str(exc))
    click.echo(_error_body(exc), err=True)
    return EXIT_AXIOM


def precondition_handler(exc: Exception) -> int:
    """Handle PreconditionError."""
    logger.warning("Precondition failed", error=type(exc).__name__, detail=str(exc))
    click.echo(_error_body(exc), err=True)
    return EXIT_PRECONDITION


def unknown_suite_handler(exc: Exception) -> int:
    """Handle UnknownSuite."""
    logger.warning("Unknown suite", detail=str(exc))
    click.echo(_error_body(exc), err=True)
    return EXIT_UNKNOWN_SUITE


def anomaly_handler(exc: Exception) -> int:
    """Handle Anomaly."""
    logger.error("Anomaly", error=type(exc).__name__, detail=str(exc))
    click.echo(_error_body(exc), err=True)
    return EXIT_INTERNAL


def generic_exception_handler(exc: Exception) -> int:
    """Handle generic exceptions."""
    logger.exception("Unhandled exception", error=str(exc))
    click.echo(_error_body(exc), err=True)
    return EXIT_INTERNAL


def setup_exception_handlers(group: HandlingGroup) -> None:
    """Setup exception handlers for the command group."""
    group.add_exception_handler(DocumentError, document_error_handler)
    group.add_exception_handler(AxiomViolation, axiom_violation_handler)
    group.add_exception_handler(PreconditionError, precondition_handler)
    group.add_exception_handler(UnknownSuite, unknown_suite_handler)
    group.add_exception_handler(Anomaly, anomaly_handler)
    group.add_exception_handler(Exception, generic_exception_handler)
