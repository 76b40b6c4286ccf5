import pytest

from iotmarket.cli.market_file import load_market
from iotmarket.mechanism import Objective
from iotmarket.solver import solve_mechanism

EXAMPLE_DELTA_S = 3.5
EXAMPLE_DELTA_B = 95 / 29


def tau_seller(lam):
    return (10 * lam - 5) / (4 * lam - 11)


def tau_buyer(lam):
    return (11 * lam - 5) / (4 * lam - 10)


@pytest.fixture(scope="session")
def example_spec():
    return load_market("paper_example")


@pytest.fixture(scope="session")
def welfare_solution(example_spec):
    return solve_mechanism(example_spec, Objective.WELFARE)


@pytest.fixture(scope="session")
def revenue_solution(example_spec):
    return solve_mechanism(example_spec, Objective.REVENUE)
