# Licensed under the MIT License.
# divgame Copyright (C) 2024 divgame contributors.

# site
import pytest

# internal
from divgame import ModelParams, solve_equilibrium
from divgame.dividend import duopoly_solution, monopoly_solution


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run full-scale Monte Carlo acceptance tests")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: full-scale Monte Carlo run, needs --runslow")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return

    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(scope="session")
def params():
    return ModelParams()


@pytest.fixture(scope="session")
def duopoly(params):
    return duopoly_solution(params)


@pytest.fixture(scope="session")
def monopoly(params):
    return monopoly_solution(params)


@pytest.fixture(scope="session")
def eq(params):
    return solve_equilibrium(params)
