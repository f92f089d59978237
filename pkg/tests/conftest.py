"""Pytest configuration and fixtures."""

import json
import os
from collections.abc import Callable
from pathlib import Path
from typing import Any

import pytest
from click.testing import CliRunner
from dotenv import load_dotenv
from hypothesis import settings as hypothesis_settings

# Load .env from the project root regardless of the cwd pytest runs in
_load_env_path = os.path.join(os.path.dirname(__file__), "..", ".env")
load_dotenv(_load_env_path)

from powerdomains.models.space import FiniteSpace  # noqa: E402
from powerdomains.services.lawcheck.config import GenConfig  # noqa: E402
from powerdomains.services.lawcheck.generators import sierpinski, w_lattice  # noqa: E402

hypothesis_settings.register_profile("default", max_examples=60, deadline=None)
hypothesis_settings.load_profile("default")


@pytest.fixture
def S() -> FiniteSpace:
    """Sierpiński space: 0 ≤ 1, opens ∅, {1}, {0,1}."""
    return sierpinski()


@pytest.fixture
def one_point() -> FiniteSpace:
    return FiniteSpace.discrete(["*"], "one")


@pytest.fixture
def discrete2() -> FiniteSpace:
    return FiniteSpace.discrete(["a", "b"], "discrete2")


@pytest.fixture
def indiscrete2() -> FiniteSpace:
    return FiniteSpace.indiscrete(["a", "b"], "indiscrete2")


@pytest.fixture
def W() -> FiniteSpace:
    """The lattice 0 < x, y < t."""
    return w_lattice()


@pytest.fixture
def chain3() -> FiniteSpace:
    return FiniteSpace.chain(3, "chain3")


@pytest.fixture
def small_cfg() -> GenConfig:
    """A quick generator configuration for suite smoke runs."""
    return GenConfig(seed=7, max_points=3, instance_count=12)


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()


@pytest.fixture
def write_json(tmp_path: Path) -> Callable[[str, Any], str]:
    """Write a JSON document under tmp_path and return its path."""

    def write(name: str, data: Any) -> str:
        path = tmp_path / name
        path.write_text(json.dumps(data), encoding="utf-8")
        return str(path)

    return write


@pytest.fixture
def sierpinski_doc() -> dict[str, Any]:
    return {"points": ["0", "1"], "preorder": [["0", "0"], ["1", "1"], ["0", "1"]], "name": "S"}
