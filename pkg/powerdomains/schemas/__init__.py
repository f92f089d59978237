"""Pydantic schemas."""

from powerdomains.schemas.documents import (
    ClosedSetDocument,
    FunctionDocument,
    HyperspaceDocument,
    MapDocument,
    SecondOrderDocument,
    SpaceDocument,
    ValuationDocument,
)
from powerdomains.schemas.report import FailureRecord, SuiteReport

__all__ = [
    "SpaceDocument",
    "ValuationDocument",
    "FunctionDocument",
    "MapDocument",
    "SecondOrderDocument",
    "ClosedSetDocument",
    "HyperspaceDocument",
    "SuiteReport",
    "FailureRecord",
]
