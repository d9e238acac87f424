from functools import cache

import pytest

from ninfty.groups import construct_group


@cache
def group(name: str):
    """Groups are cached so lattices and character tables are shared across tests."""
    return construct_group(name)


@pytest.fixture
def G():
    return group


# acceptance lines, filled in by test_acceptance.py
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for num in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[num])
