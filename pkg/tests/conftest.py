import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from brf.geometry import normalize  # noqa: E402

# acceptance criterion number -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE = {}


@pytest.fixture
def record():
    def _record(num, title, passed, detail=""):
        ACCEPTANCE[num] = (title, bool(passed), detail)
    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        title, ok, detail = ACCEPTANCE[num]
        tr.write_line(f"[{'PASS' if ok else 'FAIL'}] {num}. {title}: {detail}")


@pytest.fixture
def four_crossing():
    """Two A and two B points whose four rectangles pairwise intersect."""
    return normalize([(1, 3), (2, 1)], [(6, 4), (3, 6)])


@pytest.fixture
def two_disjoint():
    return normalize([(1, 1), (5, 5)], [(2, 2), (6, 6)])
