"""Law suite report schemas."""

from typing import Any

from pydantic import BaseModel, Field


class FailureRecord(BaseModel):
    """One failing diagram on one instance, with its shrunk witness."""

    index: int = Field(..., ge=0)
    diagram: str
    kind: str
    detail: str
    specimen: dict[str, Any] | None = None
    replay: str


class SuiteReport(BaseModel):
    """Suite report schema."""

    suite: str
    seed: int
    max_points: int
    instances: int = Field(..., ge=0)
    passed: int = 0
    failed: int = 0
    skipped: int = 0
    failures: list[FailureRecord] = Field(default_factory=list)
    wall_time: float = 0.0

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def content(self) -> dict[str, Any]:
        """Everything but the wall time; equal for equal (suite, config)."""
        return self.model_dump(exclude={"wall_time"})
