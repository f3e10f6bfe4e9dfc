import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from frobhh.exactla import PrimeField  # noqa: E402

ACCEPTANCE = {}


@pytest.fixture(scope="session")
def F13():
    return PrimeField(13)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
