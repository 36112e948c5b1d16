from __future__ import annotations

import pytest

from bigembed.core import Signature
from helpers import ACCEPTANCE_LINES, ambient_rule_parts


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def sig_kl():
    return Signature.of(("K", 1, True), ("L", 0, False))


@pytest.fixture
def ambient():
    return ambient_rule_parts()
