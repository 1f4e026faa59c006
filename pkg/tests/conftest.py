import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance():
    """Call ``report(number, ok, detail)`` once per criterion; timing is added."""
    t0 = time.perf_counter()

    def report(number: int, ok: bool, detail: str, limit_s: float):
        elapsed = time.perf_counter() - t0
        ok = ok and elapsed < limit_s
        line = f"ACCEPTANCE {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}  [{elapsed:.1f}s / limit {limit_s:.0f}s]"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return report


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
