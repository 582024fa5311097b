import hashlib

import pytest


def seed_of(label) -> bytes:
    """Distinct reproducible 32-byte seeds for tests."""
    return hashlib.sha256(f"sigbench-test/{label}".encode()).digest()


@pytest.fixture
def seed():
    return seed_of("fixture")


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
