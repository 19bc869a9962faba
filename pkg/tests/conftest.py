import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from lazydigest.digest_core import ExtendedDigest, check_index  # noqa: E402

ACCEPTANCE_LINES = []


class CountingDigest(ExtendedDigest):
    """Wraps a stream (or a function of the index) and counts get() calls."""

    def __init__(self, source=None):
        self.source = source
        self.gets = 0

    def get(self, index):
        index = check_index(index)
        self.gets += 1
        if self.source is None:
            return (index * 37 + 11) & 0xFF
        if callable(self.source):
            return self.source(index)
        return self.source.get(index)


@pytest.fixture
def counting():
    return CountingDigest


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
