import json
from pathlib import Path

import mpmath as mp
import pytest

ORACLE = json.loads((Path(__file__).parent / "oracle" / "values.json").read_text())


@pytest.fixture(scope="session")
def oracle():
    return ORACLE


def mpf(s):
    with mp.workdps(50):
        return +mp.mpf(s)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(mod.VERDICTS, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
