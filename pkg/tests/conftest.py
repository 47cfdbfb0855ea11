import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from frobdescent.quartic import example_quartic, fermat_quartic  # noqa: E402

ROOT = Path(__file__).resolve().parents[1]


@pytest.fixture(scope="session")
def ex5():
    return example_quartic(5)


@pytest.fixture(scope="session")
def quartic5():
    return fermat_quartic(5)


@pytest.fixture(scope="session")
def data_dir():
    return ROOT / "data"


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(RESULTS, key=str):
        terminalreporter.write_line(RESULTS[key])
