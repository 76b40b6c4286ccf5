import json

import pytest

from iotmarket.cli import main
from iotmarket.cli.market_file import BUNDLED_MARKETS

EXAMPLE = (BUNDLED_MARKETS / "paper_example.market").read_text(encoding="utf-8")
FAST = ["--grid-n", "64", "--audit-n", "51"]
# interpolated cut-offs need the default grid to meet the reciprocity tolerance
AUDITED = ["--audit-n", "51"]


def _report(path):
    pairs = (line.split(" = ", 1) for line in path.read_text(encoding="utf-8").splitlines())
    return {k: v for k, v in pairs}


@pytest.fixture
def market_path(tmp_path):
    def write(text=EXAMPLE, name="market.market"):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)
    return write


def test_init_writes_bundled_market(tmp_path, capsys):
    assert main(["init", "--dir", str(tmp_path / "work")]) == 0
    written = tmp_path / "work" / "paper_example.market"
    assert written.read_text(encoding="utf-8") == EXAMPLE
    assert str(written) in capsys.readouterr().out


def test_validate_ok(capsys):
    assert main(["validate", "--market", "paper_example"]) == 0
    assert "ok (64x64 lattice)" in capsys.readouterr().out


def test_validate_reports_violations(market_path, capsys):
    path = market_path(EXAMPLE.replace('R_S = "0.5*lam*x"', 'R_S = "-x*lam"'))
    assert main(["validate", "--market", path, "--grid-n", "16"]) == 1
    assert "attractiveness-order" in capsys.readouterr().out


def test_solve_revenue(tmp_path, capsys):
    out = tmp_path / "out"
    assert main(["solve", "--market", "paper_example", "--objective", "revenue", "--out-dir", str(out), *FAST]) == 0
    report = _report(out / "solution.txt")
    assert report["delta_S"] == "3.500000"
    assert report["delta_B"] == "3.275862"
    assert report["pattern"] == "bottom-eliminated / bottom-eliminated"
    assert report["objective"] == "revenue"
    for name in ("rule_seller.csv", "rule_buyer.csv", "payments_seller.csv", "payments_buyer.csv"):
        assert (out / name).is_file()
    assert (out / "rule_seller.csv").read_text(encoding="utf-8").splitlines()[0] == "lambda,tau"


def test_solve_welfare(tmp_path):
    out = tmp_path / "out"
    assert main(["solve", "--market", "paper_example", "--objective", "welfare", "--out-dir", str(out), *FAST]) == 0
    report = _report(out / "solution.txt")
    assert report["pattern"] == "complete-matched / complete-matched"
    assert report["delta_S"] == "1.000000"
    assert float(report["Z_W"]) == pytest.approx(28.875, abs=1e-6)


def test_reruns_are_byte_identical(tmp_path):
    for run in ("a", "b"):
        assert main(["solve", "--market", "paper_example", "--out-dir", str(tmp_path / run), *FAST]) == 0
    for name in ("rule_seller.csv", "rule_buyer.csv", "payments_seller.csv", "payments_buyer.csv", "solution.txt"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_verify_passes(tmp_path, capsys):
    out = tmp_path / "out"
    assert main(["verify", "--market", "paper_example", "--out-dir", str(out), *AUDITED]) == 0
    assert "verdict = PASS" in capsys.readouterr().out
    assert _report(out / "audit.txt")["verdict"] == "PASS"


def test_simulate_writes_rows(tmp_path):
    out = tmp_path / "out"
    argv = ["simulate", "--market", "paper_example", "--out-dir", str(out), "--seed", "9",
            "--n-sellers", "300", "--n-buyers", "200", *FAST]
    assert main(argv) == 0
    rows = (out / "sim.csv").read_text(encoding="utf-8").splitlines()
    assert rows[0] == "side,type,matched_mass,utility,payment"
    assert len(rows) == 1 + 300 + 200
    summary = _report(out / "sim_summary.txt")
    assert summary["seed"] == "9"
    assert summary["n_buyers"] == "200"


def test_report_compares_objectives(tmp_path):
    out = tmp_path / "out"
    assert main(["report", "--market", "paper_example", "--out-dir", str(out), "--sweep-n", "5", *AUDITED]) == 0
    report = _report(out / "report.txt")
    assert report["revenue.delta_S"] == "3.500000"
    assert report["welfare.delta_S"] == "1.000000"
    assert report["welfare.audit"] == report["revenue.audit"] == "PASS"
    assert len((out / "sweep.csv").read_text(encoding="utf-8").splitlines()) == 1 + 5
    assert (out / "marginal_seller.csv").is_file()


def test_options_section_and_flags(market_path, tmp_path):
    path = market_path(EXAMPLE.replace("objective = revenue", "objective = welfare").replace("grid_n = 512", "grid_n = 64"))
    out = tmp_path / "out"
    assert main(["solve", "--market", path, "--out-dir", str(out)]) == 0
    assert _report(out / "solution.txt")["objective"] == "welfare"
    assert _report(out / "solution.txt")["grid_n"] == "64"
    assert main(["solve", "--market", path, "--objective", "revenue", "--out-dir", str(out)]) == 0
    assert _report(out / "solution.txt")["objective"] == "revenue"


def test_diagnose_prints_json(capsys):
    assert main(["diagnose"]) == 0
    info = json.loads(capsys.readouterr().out)
    assert "paper_example" in info["iotmarket"]["bundled_markets"]
    assert info["host"]["cpu_count"] >= 1


# ---------------------------------------------------------------------------
# Failures
# ---------------------------------------------------------------------------

def _single_error_line(capsys):
    err = capsys.readouterr().err
    lines = err.splitlines()
    assert len(lines) == 1
    assert lines[0].startswith("error: ")
    return lines[0]


def test_inverted_support_exits_2(market_path, tmp_path, capsys):
    path = market_path(EXAMPLE.replace("support = [1, 10]", "support = [10, 1]", 1))
    assert main(["solve", "--market", path, "--out-dir", str(tmp_path / "out")]) == 2
    line = _single_error_line(capsys)
    assert "lo < hi" in line
    assert ":5:" in line
    assert not (tmp_path / "out").exists()


def test_missing_section_exits_2(market_path, capsys):
    head, _, tail = EXAMPLE.partition("[buyer]")
    path = market_path(head + "[kernels]" + tail.split("[kernels]", 1)[1])
    assert main(["solve", "--market", path]) == 2
    assert "missing section [buyer]" in _single_error_line(capsys)


def test_bad_expression_exits_2(market_path, capsys):
    path = market_path(EXAMPLE.replace('gamma = "lam"', 'gamma = "lam +* 2"'))
    assert main(["validate", "--market", path]) == 2
    line = _single_error_line(capsys)
    assert line.startswith("error: MarketFileError: ")
    assert "gamma" in line


def test_unknown_market_exits_2(capsys):
    assert main(["solve", "--market", "no_such_market"]) == 2
    assert "market file not found" in _single_error_line(capsys)


def test_bad_flag_value_exits_2(capsys):
    assert main(["solve", "--market", "paper_example", "--grid-n", "8"]) == 2
    assert "grid_n must be at least 32" in _single_error_line(capsys)


def test_bad_flag_type_exits_2(capsys):
    assert main(["solve", "--market", "paper_example", "--grid-n", "abc"]) == 2
    line = _single_error_line(capsys)
    assert line.startswith("error: UsageError: ")
    assert "invalid int value: 'abc'" in line


def test_unknown_command_exits_2(capsys):
    assert main(["optimise"]) == 2
    assert "invalid choice" in _single_error_line(capsys)


def test_missing_market_flag_exits_2(capsys):
    assert main(["solve"]) == 2
    assert "--market" in _single_error_line(capsys)


def test_solve_with_singular_edge_density(market_path, tmp_path):
    text = EXAMPLE.replace("dist = uniform", "dist = power\npower_k = 0.5", 1)
    out = tmp_path / "out"
    assert main(["solve", "--market", market_path(text), "--out-dir", str(out), *FAST]) == 0
    assert _report(out / "solution.txt")["objective"] == "revenue"
