import pytest

# criterion number -> (name, passed, detail), filled by test_acceptance
ACCEPTANCE = {}


@pytest.fixture
def record():
    def _record(number, name, passed, detail):
        ACCEPTANCE[number] = (name, passed, detail)
        print(f"criterion {number:2d} [{'PASS' if passed else 'FAIL'}] {name}: {detail}")

    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        name, passed, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:2d} [{'PASS' if passed else 'FAIL'}] {name}: {detail}")
