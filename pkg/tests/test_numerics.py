import math
import random

import pytest
from pydantic import ValidationError

from iotmarket.numerics import (
    Monotonicity,
    NoSignChangeError,
    NonFiniteValueError,
    NumericsError,
    QuadratureDepthError,
    Tolerances,
    find_root,
    integrate,
    integrate_piecewise,
    monotone_scan,
    scan_values,
)


def eta_revenue(lam_s, lam_b):
    return (2 * lam_s * lam_b - 5 * lam_s - 5.5 * lam_b + 2.5) / 81


# ---------------------------------------------------------------------------
# Tolerances
# ---------------------------------------------------------------------------

def test_tolerance_defaults():
    tol = Tolerances()
    assert (tol.quad_abs, tol.quad_rel, tol.root_x, tol.max_depth) == (1e-9, 1e-9, 1e-10, 50)


@pytest.mark.parametrize("field, value", [("quad_abs", 0.0), ("quad_rel", -1e-9), ("root_x", 0), ("max_depth", 9)])
def test_tolerances_reject_bad_values(field, value):
    with pytest.raises(ValidationError):
        Tolerances(**{field: value})


# ---------------------------------------------------------------------------
# Quadrature
# ---------------------------------------------------------------------------

def test_integrate_mean_of_uniform_type():
    assert integrate(lambda x: x / 9, 1.0, 10.0) == pytest.approx(5.5, abs=1e-9)


def test_integrate_empty_interval_is_exact_zero():
    assert integrate(lambda x: 1 / 0, 2.0, 2.0) == 0.0


def test_integrate_square():
    assert integrate(lambda x: x * x, 0.0, 1.0) == pytest.approx(1 / 3, abs=1e-9)


def test_integrate_smooth_non_polynomial():
    assert integrate(math.exp, 0.0, 2.0) == pytest.approx(math.exp(2.0) - 1.0, rel=1e-9)


def test_integrate_reversed_bounds_flip_sign():
    assert integrate(lambda x: x, 2.0, 0.0) == pytest.approx(-2.0)


def test_integrate_is_linear():
    rng = random.Random(3)
    tol = Tolerances()
    for _ in range(10):
        p = [rng.uniform(-2, 2) for _ in range(4)]
        q = [rng.uniform(-2, 2) for _ in range(4)]
        alpha, beta = rng.uniform(-3, 3), rng.uniform(-3, 3)

        def f(x):
            return sum(c * x ** k for k, c in enumerate(p))

        def g(x):
            return sum(c * x ** k for k, c in enumerate(q))

        combined = integrate(lambda x: alpha * f(x) + beta * g(x), -1.0, 2.0, tol)
        separate = alpha * integrate(f, -1.0, 2.0, tol) + beta * integrate(g, -1.0, 2.0, tol)
        assert abs(combined - separate) <= 4 * tol.quad_abs


def test_integrate_reports_non_finite_abscissa():
    with pytest.raises(NonFiniteValueError) as info:
        integrate(lambda x: math.inf if x > 0.5 else 1.0, 0.0, 1.0)
    assert info.value.abscissa > 0.5


def test_integrate_depth_limit():
    tol = Tolerances(quad_abs=1e-15, quad_rel=1e-15, max_depth=10)
    with pytest.raises(QuadratureDepthError):
        integrate(lambda x: math.sqrt(abs(x - 0.3)), 0.0, 1.0, tol)


def test_integrate_piecewise_handles_kinks():
    knots = [0.0, 0.3, 1.0]
    value = integrate_piecewise(lambda x: abs(x - 0.3), knots)
    assert value == pytest.approx(0.5 * 0.3 ** 2 + 0.5 * 0.7 ** 2, abs=1e-12)


# ---------------------------------------------------------------------------
# Roots
# ---------------------------------------------------------------------------

def test_root_of_kappa_at_threshold():
    lam = 3.5
    root = find_root(lambda x: (10 * lam - 5) - x * (4 * lam - 11), 1.0, 10.0)
    assert root == pytest.approx(10.0, abs=1e-9)


def test_root_of_linear_function():
    assert find_root(lambda x: x - 2.25, 0.0, 5.0) == pytest.approx(2.25, abs=1e-10)


def test_root_of_revenue_marginal_at_top_buyer():
    assert find_root(lambda x: eta_revenue(x, 10.0), 1.0, 10.0) == pytest.approx(3.5, abs=1e-9)


def test_root_returns_endpoint_when_it_is_a_zero():
    assert find_root(lambda x: x - 1.0, 1.0, 4.0) == 1.0


def test_root_without_sign_change():
    with pytest.raises(NoSignChangeError) as info:
        find_root(lambda x: x * x + 1.0, -1.0, 1.0)
    assert info.value.bracket == (-1.0, 1.0)


def test_root_on_flat_function_keeps_bracket():
    root = find_root(lambda x: (x - 0.7) ** 5, 0.0, 1.0)
    assert abs(root - 0.7) <= 1e-2
    assert 0.0 <= root <= 1.0


def test_root_is_deterministic():
    f = lambda x: math.cos(x) - x
    assert find_root(f, 0.0, 1.0) == find_root(f, 0.0, 1.0)


# ---------------------------------------------------------------------------
# Scans
# ---------------------------------------------------------------------------

def test_scan_identity_increasing():
    assert monotone_scan(lambda x: x, 0.0, 1.0, 16, Monotonicity.INCREASING).passed


def test_scan_seller_cutoff_nonincreasing():
    tau = lambda lam: (10 * lam - 5) / (4 * lam - 11)
    assert monotone_scan(tau, 3.5, 10.0, 64, Monotonicity.NONINCREASING).passed


def test_scan_oscillation_gives_witness():
    result = monotone_scan(lambda x: math.sin(6 * x), 0.0, 3.0, 32, Monotonicity.INCREASING)
    assert not result.passed
    x0, f0, x1, f1 = result.witness
    assert x1 > x0 and f1 - f0 < 1e-12


def test_scan_constant_is_not_strictly_increasing():
    assert not monotone_scan(lambda x: 1.0, 0.0, 1.0, 8, Monotonicity.INCREASING)
    assert monotone_scan(lambda x: 1.0, 0.0, 1.0, 8, Monotonicity.NONDECREASING)


def test_scan_slack_absorbs_rounding():
    ys = [1.0, 1.0 - 1e-15, 1.0]
    assert not scan_values([0, 1, 2], ys, Monotonicity.NONDECREASING)
    assert scan_values([0, 1, 2], ys, Monotonicity.NONDECREASING, slack=1e-12)


def test_scan_needs_eight_intervals():
    with pytest.raises(NumericsError):
        monotone_scan(lambda x: x, 0.0, 1.0, 4, Monotonicity.INCREASING)


def test_scan_rejects_non_finite():
    with pytest.raises(NonFiniteValueError):
        scan_values([0.0, 1.0], [0.0, math.nan], Monotonicity.NONINCREASING)
