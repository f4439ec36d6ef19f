import json
import os
import sys
from fractions import Fraction

import pytest
from hypothesis import settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("repo", deadline=None, derandomize=True, max_examples=100)
settings.load_profile("repo")

DATA = os.path.join(os.path.dirname(__file__), "data")


@pytest.fixture(scope="session")
def frozen():
    with open(os.path.join(DATA, "frozen_oracles.json")) as fh:
        return json.load(fh)


def period(rows):
    return tuple(tuple(Fraction(x) for x in r) for r in rows)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
