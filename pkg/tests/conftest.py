from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parent.parent

_ACCEPTANCE = []


@pytest.fixture
def scenes_dir():
    return ROOT / "scenes"


@pytest.fixture
def fixtures_dir():
    return Path(__file__).resolve().parent / "fixtures"


@pytest.fixture
def criterion():
    """Record one acceptance line; the test still asserts on its own."""

    def record(number: int, title: str, ok: bool, detail: str = ""):
        line = f"{'PASS' if ok else 'FAIL'} criterion {number:>2}: {title}"
        if detail:
            line += f" ({detail})"
        _ACCEPTANCE.append((number, line))
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(_ACCEPTANCE):
        terminalreporter.write_line(line)
