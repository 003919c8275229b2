import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from congrkit.algebra import con  # noqa: E402
from congrkit.catalog import standard_corpus  # noqa: E402

ROOT = Path(__file__).resolve().parents[1]
FIXTURES = ROOT / "fixtures"


@pytest.fixture(scope="session")
def corpus():
    """[(algebra, kind, Con(algebra))] for the standard corpus."""
    return [(a, kind, con(a)) for a, kind in standard_corpus(seed=0, random_count=200)]


@pytest.fixture(scope="session")
def fixtures_dir():
    return FIXTURES


# one PASS/FAIL line per acceptance criterion at the end of the run

_ACCEPTANCE = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if report.when == "call" or report.outcome != "passed":
        prev = _ACCEPTANCE.get(name, "PASS")
        _ACCEPTANCE[name] = "PASS" if report.passed and prev == "PASS" else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_ACCEPTANCE):
        terminalreporter.write_line(f"{_ACCEPTANCE[name]}  {name}")
