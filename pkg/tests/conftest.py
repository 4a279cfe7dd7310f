"""Test configuration and shared fixtures for the nilorbits test suite.

Algebras and diagrams used by several modules live here; everything is
exact, so fixtures can be shared freely between tests.
"""

import json
import logging
import os
import tempfile
from collections.abc import Generator
from pathlib import Path
from unittest.mock import patch

import pytest

from nilorbits import SimpleType, WeightedDiagram, build_algebra
from nilorbits.chevalley import ChevalleyAlgebra
from nilorbits.models import ClassicalAlgebra, Family, RunConfig


# Configure logging for tests
@pytest.fixture(scope="session", autouse=True)
def configure_test_logging():
    """Configure logging for test runs."""
    logging.basicConfig(
        level=logging.DEBUG,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    )
    # sympy and numpy stay quiet
    logging.getLogger("sympy").setLevel(logging.WARNING)


# Temporary directory fixtures
@pytest.fixture
def temp_dir() -> Generator[Path, None, None]:
    """Create a temporary directory for test files."""
    with tempfile.TemporaryDirectory() as tmp_dir:
        yield Path(tmp_dir)


@pytest.fixture
def temp_config_file(temp_dir: Path) -> Path:
    """Create a temporary config file for testing."""
    config_file = temp_dir / "nilorbits.json"
    test_config = {
        "seed": 7,
        "trials": 4,
        "numbering": "vo",
        "output": "json",
    }
    config_file.write_text(json.dumps(test_config, indent=2))
    return config_file


@pytest.fixture
def clean_env() -> Generator[None, None, None]:
    """Environment without NILORBITS_* variables and without a .env file."""
    env = {k: v for k, v in os.environ.items() if not k.startswith("NILORBITS_")}
    with patch.dict(os.environ, env, clear=True), patch("nilorbits.config.load_dotenv"):
        yield


@pytest.fixture
def run_config() -> RunConfig:
    """Default run configuration."""
    return RunConfig()


# Algebra fixtures
@pytest.fixture
def a2() -> SimpleType:
    return SimpleType.parse("A2")


@pytest.fixture
def a2_algebra(a2: SimpleType) -> ChevalleyAlgebra:
    return build_algebra(a2)


@pytest.fixture
def g2() -> SimpleType:
    return SimpleType.parse("G2")


@pytest.fixture
def f4() -> SimpleType:
    return SimpleType.parse("F4")


@pytest.fixture
def regular_a2(a2: SimpleType) -> WeightedDiagram:
    """Diagram of the regular orbit of sl3."""
    return WeightedDiagram(simple_type=a2, marks=(2, 2))


@pytest.fixture
def minimal_a2(a2: SimpleType) -> WeightedDiagram:
    """Diagram of the minimal orbit of sl3."""
    return WeightedDiagram(simple_type=a2, marks=(1, 1))


@pytest.fixture
def f4_a2(f4: SimpleType) -> WeightedDiagram:
    """Diagram of F4(a2) in Bourbaki order."""
    return WeightedDiagram(simple_type=f4, marks=(0, 2, 0, 2))


@pytest.fixture
def so8() -> ClassicalAlgebra:
    return ClassicalAlgebra(family=Family.SO, dim_v=8)


# Pytest configuration
def pytest_configure(config):
    """Configure pytest with custom markers."""
    config.addinivalue_line("markers", "slow: sweeps over E7 and E8")


# Cleanup fixtures
@pytest.fixture(autouse=True)
def cleanup_logging():
    """Ensure clean logging state for each test."""
    yield
    for logger_name in logging.Logger.manager.loggerDict:
        logger = logging.getLogger(logger_name)
        if logger_name.startswith("nilorbits"):
            logger.setLevel(logging.NOTSET)
