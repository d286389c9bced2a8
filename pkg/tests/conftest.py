import sys
from pathlib import Path

import pytest

from empdb.oracle import parse_interpretation
from empdb.syntax import parse_program

PROGRAMS = Path(__file__).resolve().parent.parent / "programs"


def load(name: str):
    return parse_program((PROGRAMS / name).read_text())


@pytest.fixture
def elephants():
    return load("elephants.emp")


@pytest.fixture
def monk_seals():
    return load("monk_seals.emp")


@pytest.fixture
def joe_male():
    return load("joe_male.emp")


@pytest.fixture
def divergence():
    return load("divergence.emp")


@pytest.fixture
def seal_colony():
    """Twenty elements: four female monk seals, six male ones, ten others; joe is d5."""
    return parse_interpretation((PROGRAMS / "example3.interp").read_text())


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    if acceptance is None or not acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in acceptance.summary_lines():
        terminalreporter.write_line(line)
