import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from markov_choice import reference  # noqa: E402

FULL = ("i", "j", "k", "l")

ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def star():
    return reference.star_data()


@pytest.fixture
def circulating():
    return reference.circulating_data()


@pytest.fixture
def bottleneck():
    return reference.bottleneck_data()


@pytest.fixture
def full_menu():
    return reference.UNIVERSE.full_menu()


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
