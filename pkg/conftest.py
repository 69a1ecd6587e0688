# conftest.py
import os
import random
import sys

import pytest

project_root = os.path.dirname(os.path.abspath(__file__))
if project_root not in sys.path:
    sys.path.insert(0, project_root)

from algebras.builtins import builtin  # noqa: E402


@pytest.fixture(scope="session")
def metabelian():
    return builtin("metabelian")


@pytest.fixture(scope="session")
def sl2_cartan():
    return builtin("sl2-cartan")


@pytest.fixture(scope="session")
def sl2():
    return builtin("sl2-trivial")


@pytest.fixture(scope="session")
def abelian3():
    return builtin("abelian(3)")


@pytest.fixture
def rng():
    return random.Random(20131)


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run checks at the budget degrees")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: full-size checks at the budget degrees")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)
