import pytest

from iotmarket.exprlang import parse
from iotmarket.market import GAMMA_SIGNATURE, Side
from iotmarket.mechanism import build_payments, uniform_threshold_rule
from iotmarket.verification import (
    MUTATIONS,
    AuditReport,
    VerificationError,
    apply_mutation,
    audit,
    ic_audit,
    icfoc_audit,
    ir_audit,
    objective_cross_check,
    reciprocity_audit,
)

S, B = Side.SELLER, Side.BUYER


@pytest.fixture(scope="module")
def welfare_report(example_spec, welfare_solution):
    return audit(example_spec, welfare_solution, 201, 201, 201)


@pytest.fixture(scope="module")
def revenue_report(example_spec, revenue_solution):
    return audit(example_spec, revenue_solution, 201, 201, 201)


# ---------------------------------------------------------------------------
# Full audits
# ---------------------------------------------------------------------------

def test_welfare_solution_passes(welfare_report):
    assert welfare_report.verdict == "PASS", welfare_report.failures()
    assert max(welfare_report.ic_max_gain.values()) <= 1e-9
    assert welfare_report.grids == {"n_true": 201, "n_report": 201, "n": 201}


def test_revenue_solution_passes(revenue_report):
    assert revenue_report.verdict == "PASS", revenue_report.failures()
    assert max(revenue_report.ic_max_gain.values()) <= 1e-6
    assert min(revenue_report.ir_min_payoff.values()) >= -1e-9
    assert max(abs(v) for v in revenue_report.ir_lowest_payoff.values()) <= 1e-9
    assert max(revenue_report.icfoc_max_err.values()) <= 1e-4
    assert revenue_report.objective_cross_err <= 1e-6


def test_welfare_icfoc_is_exact(welfare_report):
    assert welfare_report.icfoc_max_err["seller"] <= 1e-6


# ---------------------------------------------------------------------------
# Single audits
# ---------------------------------------------------------------------------

def test_ir_under_welfare_rule(example_spec, welfare_solution):
    mins, lowest = ir_audit(example_spec, welfare_solution, 51)
    assert mins["seller"] == pytest.approx(0.0, abs=1e-8)
    assert lowest["seller"] == pytest.approx(0.0, abs=1e-8)
    assert lowest["buyer"] == pytest.approx(0.0, abs=1e-8)


def test_ir_at_revenue_thresholds(example_spec, revenue_solution):
    _, lowest = ir_audit(example_spec, revenue_solution, 51)
    assert all(abs(v) <= 1e-9 for v in lowest.values())


def test_reciprocity_audit(example_spec, welfare_solution, revenue_solution):
    assert reciprocity_audit(example_spec, welfare_solution, 64) == {"seller": 0.0, "buyer": 0.0}
    errors = reciprocity_audit(example_spec, revenue_solution, 64)
    assert max(errors.values()) <= 1e-4
    seller, buyer = revenue_solution.rule.seller, revenue_solution.rule.buyer
    assert abs(buyer.tau_at(seller.tau_at(5.0)) - 5.0) <= 1e-4


def test_cross_check(example_spec, welfare_solution, revenue_solution):
    assert objective_cross_check(example_spec, welfare_solution) <= 1e-6
    assert objective_cross_check(example_spec, revenue_solution) <= 1e-6


def test_cross_check_on_empty_rule(example_spec, revenue_solution):
    rule = uniform_threshold_rule(example_spec, 1.0)
    empty = revenue_solution.replace(rule=rule, payments=build_payments(example_spec, rule))
    assert objective_cross_check(example_spec, empty) <= 1e-12


def test_grid_minimums(example_spec, revenue_solution):
    with pytest.raises(VerificationError):
        icfoc_audit(example_spec, revenue_solution, 20)
    with pytest.raises(VerificationError):
        ic_audit(example_spec, revenue_solution, 51, 50)
    with pytest.raises(VerificationError):
        reciprocity_audit(example_spec, revenue_solution, 31)


def test_type_dependent_payment_invites_misreporting(example_spec, welfare_solution):
    seller = welfare_solution.payments.seller
    rigged = seller.copy(update={"formula": parse("lam", GAMMA_SIGNATURE)})
    solution = welfare_solution.replace(payments=welfare_solution.payments.replace_side(rigged))
    gains = ic_audit(example_spec, solution, 51, 51)
    assert gains["seller"] > 1.0
    assert gains["buyer"] <= 1e-9


# ---------------------------------------------------------------------------
# Fault injection
# ---------------------------------------------------------------------------

def test_mutation_registry():
    assert sorted(MUTATIONS.names()) == ["drop-rent", "flatten-tau", "negate-kernel", "scale-phi", "shift-tau"]


@pytest.mark.parametrize("name", ["shift-tau", "scale-phi", "drop-rent", "flatten-tau", "negate-kernel"])
def test_mutation_is_detected(name, example_spec, revenue_solution):
    spec, solution = apply_mutation(name, example_spec, revenue_solution)
    report = audit(spec, solution, 51, 51, 51)
    assert report.verdict == "FAIL"
    assert report.worst_ratio() > 10


def test_mutations_leave_the_original_untouched(example_spec, revenue_solution):
    before = list(revenue_solution.rule.seller.tau)
    apply_mutation("shift-tau", example_spec, revenue_solution)
    assert revenue_solution.rule.seller.tau == before


# ---------------------------------------------------------------------------
# Report
# ---------------------------------------------------------------------------

def test_report_ratios_and_verdict():
    report = AuditReport(
        objective="revenue",
        ic_max_gain={"seller": 2e-6, "buyer": 0.0},
        ir_min_payoff={"seller": 0.0, "buyer": 0.0},
        ir_lowest_payoff={"seller": 0.0, "buyer": 0.0},
        icfoc_max_err={"seller": 0.0, "buyer": 0.0},
        reciprocity_max_err={"seller": 0.0, "buyer": 0.0},
    )
    assert report.failures() == ["ic_max_gain[seller]"]
    assert report.worst_ratio() == pytest.approx(2.0)
    assert report.verdict == "FAIL"
