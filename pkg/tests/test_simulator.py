import numpy as np
import pytest
from pydantic import ValidationError

from iotmarket.market import Side
from iotmarket.mechanism import build_payments, uniform_threshold_rule
from iotmarket.simulator import SimConfig, polynomial_coefficients, sample_population, simulate, tail_sums
from iotmarket.exprlang import parse
from iotmarket.market import KERNEL_SIGNATURE

S, B = Side.SELLER, Side.BUYER


def _run(spec, solution, n_sellers, n_buyers, seed=20240611):
    return simulate(SimConfig(spec=spec, solution=solution, n_sellers=n_sellers, n_buyers=n_buyers, seed=seed))


# ---------------------------------------------------------------------------
# Sampling
# ---------------------------------------------------------------------------

def test_samples_follow_the_distribution(example_spec):
    types = sample_population(example_spec.distribution(S), 100_000, 3)
    assert types.min() >= 1.0 and types.max() <= 10.0
    assert types.mean() == pytest.approx(5.5, abs=0.05)


def test_single_draw_is_deterministic(example_spec):
    a = sample_population(example_spec.distribution(B), 1, 7)
    b = sample_population(example_spec.distribution(B), 1, 7)
    assert a.shape == (1,)
    assert a[0] == b[0]


def test_population_size_must_be_positive(example_spec):
    with pytest.raises(ValueError):
        sample_population(example_spec.distribution(S), 0, 1)


def test_config_validation(example_spec, welfare_solution):
    with pytest.raises(ValidationError):
        SimConfig(spec=example_spec, solution=welfare_solution, n_sellers=0, n_buyers=10, seed=1)
    with pytest.raises(ValidationError):
        SimConfig(spec=example_spec, solution=welfare_solution, n_sellers=10, n_buyers=10, seed=-1)
    with pytest.raises(ValidationError):
        SimConfig(spec=example_spec, solution=welfare_solution, n_sellers=10, n_buyers=10, seed=2 ** 64)


# ---------------------------------------------------------------------------
# Tail sums
# ---------------------------------------------------------------------------

def test_polynomial_kernel_is_detected(example_spec):
    coefficients = polynomial_coefficients(example_spec.kernel(S), (1.0, 10.0), (1.0, 10.0))
    assert coefficients is not None
    assert len(coefficients) == 2
    assert polynomial_coefficients(parse("exp(x)", KERNEL_SIGNATURE), (1.0, 10.0), (1.0, 10.0)) is None


@pytest.mark.parametrize("source", ["lam*x - lam", "exp(x/10)*lam"])
def test_tail_sums_match_brute_force(source):
    e = parse(source, KERNEL_SIGNATURE)
    rng = np.random.default_rng(5)
    own = rng.uniform(1.0, 10.0, 40)
    opp = np.sort(rng.uniform(1.0, 10.0, 60))
    thresholds = rng.uniform(1.0, 10.0, 40)
    got = tail_sums(e, own, opp, thresholds, 1.0, (1.0, 10.0), (1.0, 10.0), chunk_cells=1024)
    values = e.evaluate_array({"lam": own[:, None], "x": opp[None, :]})
    want = np.where(opp[None, :] >= thresholds[:, None], values, 0.0).sum(axis=1)
    np.testing.assert_allclose(got, want, rtol=1e-9, atol=1e-9)


# ---------------------------------------------------------------------------
# Market realization
# ---------------------------------------------------------------------------

@pytest.mark.slow
def test_welfare_rule_converges(example_spec, welfare_solution):
    result = _run(example_spec, welfare_solution, 200_000, 200_000)
    assert abs(result.welfare - 28.875) <= 3 * result.welfare_se
    assert abs(result.revenue - 5.25) <= 3 * result.revenue_se + 1e-8
    assert result.mean_payment == pytest.approx({"seller": 2.75, "buyer": 2.5})


def test_revenue_rule_beats_welfare_rule_on_revenue(example_spec, welfare_solution, revenue_solution):
    welfare = _run(example_spec, welfare_solution, 20_000, 20_000)
    revenue = _run(example_spec, revenue_solution, 20_000, 20_000)
    assert revenue.welfare < welfare.welfare
    assert np.all(revenue.sellers.payment[revenue.sellers.types < 3.5] == 0.0)
    assert np.all(revenue.sellers.utility[revenue.sellers.types < 3.5] == 0.0)


def test_same_seed_same_market(example_spec, revenue_solution):
    a = _run(example_spec, revenue_solution, 5_000, 3_000, seed=11)
    b = _run(example_spec, revenue_solution, 5_000, 3_000, seed=11)
    c = _run(example_spec, revenue_solution, 5_000, 3_000, seed=12)
    assert a.welfare == b.welfare and a.revenue == b.revenue
    np.testing.assert_array_equal(a.buyers.types, b.buyers.types)
    assert not np.array_equal(a.sellers.types, c.sellers.types)


def test_empty_rule_trades_nothing(example_spec, revenue_solution):
    rule = uniform_threshold_rule(example_spec, 1.0)
    empty = revenue_solution.replace(rule=rule, payments=build_payments(example_spec, rule))
    result = _run(example_spec, empty, 1_000, 1_000)
    assert result.welfare == 0.0
    assert result.revenue == 0.0
    assert result.pair_mass == {"seller": 0.0, "buyer": 0.0}


def test_pair_mass_agrees_across_sides(example_spec, welfare_solution, revenue_solution):
    result = _run(example_spec, welfare_solution, 4_000, 6_000)
    assert result.pair_mass["seller"] == pytest.approx(result.pair_mass["buyer"], abs=1 / 4_000)
    result = _run(example_spec, revenue_solution, 10_000, 10_000)
    assert result.pair_mass["seller"] == pytest.approx(result.pair_mass["buyer"], abs=1e-3)


def test_records_shape(example_spec, revenue_solution):
    result = _run(example_spec, revenue_solution, 300, 200)
    assert result.records(S).n == 300
    assert result.records(B).n == 200
    assert result.records(B).matched_mass.max() <= 1.0
