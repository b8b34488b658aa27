import sys
from pathlib import Path

from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def raw(A):
    """Structure constants and twist rows as plain Python numbers."""
    conv = (lambda x: x) if A.field.characteristic == 0 else int
    c = [[[conv(x) for x in A.c[i][j]] for j in range(A.dim)] for i in range(A.dim)]
    a = [[conv(x) for x in row] for row in A.alpha.rows]
    return c, a


def pytest_configure(config):
    config.addinivalue_line("markers", "crit(number, title): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import VERDICTS
    except ImportError:
        return
    if not VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(VERDICTS):
        ok, title = VERDICTS[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {title}")
