import os
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

BUNDLED = Path(__file__).parent / "data"


def data_path(name: str) -> Path:
    """Benchmark file lookup: ``$QUICKSHIFTPP_DATA`` first, then the bundled copies."""
    for root in filter(None, [os.environ.get("QUICKSHIFTPP_DATA"), BUNDLED]):
        path = Path(root) / name
        if path.exists():
            return path
    return BUNDLED / name


@pytest.fixture
def iris_path():
    return data_path("iris.csv")


ACCEPTANCE = []


@pytest.fixture
def criterion():
    """Record one acceptance line; the assertion itself stays in the test."""

    def report(number, title, ok, detail=""):
        line = f"criterion {number:>2} {'PASS' if ok else 'FAIL'}  {title}  {detail}".rstrip()
        ACCEPTANCE.append((number, line))
        print(line)
        return ok

    return report


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(ACCEPTANCE, key=lambda item: item[0]):
        terminalreporter.write_line(line)
