import pytest

from polyxform import ptransform

# One line per acceptance criterion, filled in by tests/test_acceptance.py
# and echoed after the run so the verdicts survive output capturing.
acceptance_lines = []


def pytest_terminal_summary(terminalreporter):
    if acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(acceptance_lines):
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def plan13():
    """Small runnable plan: p = 13, sized for coefficients up to 12."""
    return ptransform.preprocess(
        p=13, bound_mode=ptransform.INPUT_AWARE, coeff_bound=12
    )


@pytest.fixture(scope="session")
def plan7():
    """Tiny strict plan: p = 7 (scan extends above p)."""
    return ptransform.preprocess(p=7, bound_mode=ptransform.STRICT)
