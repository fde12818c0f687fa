"""Shared fixtures for the simulator tests."""

from pathlib import Path

import pytest

from src.parser import parse_scenario, parse_scenario_file
from tests.helpers import scenario_text

ROOT = Path(__file__).parent.parent
SCENARIOS = ROOT / "scenarios"
GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture
def ref6_path() -> Path:
    return SCENARIOS / "ref6.scenario"


@pytest.fixture
def ref6_scenario(ref6_path):
    return parse_scenario_file(str(ref6_path))


@pytest.fixture
def default_scenario():
    return parse_scenario_file(str(SCENARIOS / "default.scenario"))


@pytest.fixture
def two_attribute_scenario():
    return parse_scenario_file(str(SCENARIOS / "two_attributes.scenario"))


@pytest.fixture
def small_scenario():
    return parse_scenario(scenario_text())


@pytest.fixture
def golden_dir() -> Path:
    return GOLDEN
