import sys
from pathlib import Path

import pytest
from loguru import logger

import multireg

RINGS_DIR = Path(__file__).resolve().parents[2] / "rings"


@pytest.fixture
def rings_dir() -> Path:
    return RINGS_DIR


@pytest.fixture(autouse=True)
def reset_global_configs():
    """Every test starts from the default configuration."""
    multireg.set_global_configs(None)
    yield
    multireg.set_global_configs(None)


@pytest.fixture(autouse=True)
def restore_logger():
    """The CLI replaces the loguru sinks; put the default one back."""
    yield
    logger.remove()
    logger.add(sys.stderr)
