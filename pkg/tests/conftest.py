from os import path
from pathlib import Path

import pytest

import covred
from covred.core import load_system
from covred.dynamic import load_mutation

TESTDATA = Path(__file__).absolute().parent / "testdata_covred"


@pytest.fixture
def path_to_covred():
    """path to installed covred module."""
    return path.dirname(covred.__file__)


@pytest.fixture
def consistent_system():
    """Eight objects, five coverings, every object in the positive region"""
    return load_system(TESTDATA / "consistent.json")


@pytest.fixture
def inconsistent_system():
    """Eight objects, five coverings, objects 1 and 2 outside the positive
    region"""
    return load_system(TESTDATA / "inconsistent.json")


@pytest.fixture
def example_mutation():
    """Load one of the mutation files, for a universe of eight objects"""

    def _load(name):
        return load_mutation(TESTDATA / f"{name}.json", 8)

    return _load


def pytest_addoption(parser):
    parser.addoption(
        "--bench",
        action="store_true",
        default=False,
        help="run the slow benchmark ordering and stability tests",
    )


def pytest_collection_modifyitems(config, items):
    """Add skip markers to marked test functions skip it unless
    options are supplied on the pytest command line"""
    for item in items:
        if "bench" in item.keywords and not config.getoption("--bench"):
            item.add_marker(pytest.mark.skip(reason="need --bench option to run"))
