"""Generator configuration."""

from pydantic import BaseModel, ConfigDict, Field

from powerdomains.core.config import settings


class GenConfig(BaseModel):
    """Seeded generator settings; equal configs yield equal instance streams."""

    model_config = ConfigDict(frozen=True)

    seed: int = Field(default_factory=lambda: settings.DEFAULT_SEED, ge=0, lt=2**64)
    max_points: int = Field(default_factory=lambda: settings.DEFAULT_MAX_POINTS, ge=0)
    instance_count: int | None = Field(default=None, ge=0)
    weight_denominator_bound: int = Field(
        default_factory=lambda: settings.WEIGHT_DENOMINATOR_BOUND, ge=1
    )
    allow_infinity: bool = Field(default_factory=lambda: settings.ALLOW_INFINITY)
    adversarial: bool = False

    def replay_flags(self) -> str:
        """CLI flags that reproduce this configuration."""
        flags = [f"--seed {self.seed}", f"--max-points {self.max_points}"]
        if self.weight_denominator_bound != settings.WEIGHT_DENOMINATOR_BOUND:
            flags.append(f"--denominator-bound {self.weight_denominator_bound}")
        if self.allow_infinity:
            flags.append("--allow-infinity")
        if self.adversarial:
            flags.append("--adversarial")
        return " ".join(flags)
