import pytest

ACCEPTANCE: dict[int, str] = {}


@pytest.fixture
def criterion():
    def record(n: int, ok: bool, detail: str = ""):
        ACCEPTANCE[n] = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'} {detail}".rstrip()
        print(ACCEPTANCE[n])
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])
