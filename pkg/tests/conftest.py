import time
from contextlib import contextmanager

import pytest

# criterion number -> list of (part, ok, seconds, budget)
ACCEPTANCE: dict[int, list] = {}
TITLES: dict[int, str] = {}


@contextmanager
def _criterion(number: int, title: str, budget: float, part: str = ""):
    TITLES[number] = title
    start = time.perf_counter()
    ok = False
    try:
        yield
        elapsed = time.perf_counter() - start
        assert elapsed < budget, f"criterion {number} {part}: {elapsed:.2f}s exceeds {budget}s"
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        ACCEPTANCE.setdefault(number, []).append((part, ok, elapsed, budget))
        tag = f" [{part}]" if part else ""
        print(f"criterion {number}{tag}: {'PASS' if ok else 'FAIL'} ({elapsed:.2f}s / {budget}s)")


@pytest.fixture
def criterion():
    return _criterion


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for number in sorted(ACCEPTANCE):
        parts = ACCEPTANCE[number]
        ok = all(p[1] for p in parts)
        slowest = max(p[2] for p in parts)
        budget = parts[0][3]
        detail = f"{len(parts)} part(s), slowest {slowest:.2f}s, budget {budget}s"
        terminalreporter.write_line(
            f"criterion {number}: {'PASS' if ok else 'FAIL'}  {TITLES[number]}  ({detail})")
