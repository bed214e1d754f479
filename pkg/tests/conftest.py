import random
import warnings
from fractions import Fraction

import pytest

from reebcone import catalog
from reebcone.fixed_locus import dataset_from_cone


def _load():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return {name: e.cone for name, e in catalog.CATALOG.items()}


CONES = _load()
DATASETS = {name: dataset_from_cone(c) for name, c in CONES.items()}


@pytest.fixture(scope="session")
def cones():
    return CONES


@pytest.fixture(scope="session")
def datasets():
    return DATASETS


@pytest.fixture
def rng():
    return random.Random(12345)


def q(*xs):
    return tuple(Fraction(x) for x in xs)


# one PASS/FAIL line per acceptance criterion, repeated in the terminal summary
ACCEPTANCE = {}


def record(number, title, passed, detail=""):
    line = f"{'PASS' if passed else 'FAIL'} criterion {number} ({title}): {detail}"
    ACCEPTANCE[number] = line
    print(line)
    return passed


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])
