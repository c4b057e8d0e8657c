from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

import acceptance_report
from specimen.lexicon import Lexicon, load_lexicon
from specimen.model import FiniteModel, check_model, load_model

FIXTURES = Path(__file__).parent.parent / "fixtures"


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if acceptance_report.LINES:
        terminalreporter.section("acceptance criteria")
        for line in acceptance_report.LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def carlotta_lexicon() -> Lexicon:
    return load_lexicon((FIXTURES / "carlotta.lex").read_text())


@pytest.fixture(scope="session")
def carlotta_model(carlotta_lexicon) -> FiniteModel:
    model = load_model((FIXTURES / "carlotta.model").read_text())
    check_model(model, carlotta_lexicon.signature)
    return model


@pytest.fixture(scope="session")
def brits_lexicon() -> Lexicon:
    return load_lexicon((FIXTURES / "brits.lex").read_text())


@pytest.fixture(scope="session")
def brits_model(brits_lexicon) -> FiniteModel:
    model = load_model((FIXTURES / "brits.model").read_text())
    check_model(model, brits_lexicon.signature)
    return model
