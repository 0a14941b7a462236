import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_acceptance_key = pytest.StashKey[list]()


@pytest.fixture
def acceptance(request):
    """Collects one verdict line per acceptance criterion for the terminal summary."""
    lines = request.config.stash.setdefault(_acceptance_key, [])

    def record(number: int, ok: bool, text: str) -> bool:
        line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {text}"
        lines.append((number, line))
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_acceptance_key, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(lines):
            terminalreporter.write_line(line)
