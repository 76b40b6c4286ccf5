# iotmarket/cli/outputs.py
"""
Output Writers
--------------

CSV tables and `key = value` text reports. Numbers carry OUTPUT_DIGITS
significant digits, `.` decimals and `\n` line endings; nothing
time-dependent is written into a file body.
"""

from __future__ import annotations
from pathlib import Path
from typing import Any, Iterable, List, Sequence, Tuple
import csv

from ..constants import OUTPUT_DIGITS
from ..market import MarketSpec, Side
from ..simulator import SimResult
from ..solver import MechanismSolution
from ..verification import AuditReport


def fmt(value: Any) -> str:
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, float):
        text = f"{value:.{OUTPUT_DIGITS}g}"
        return "0" if text == "-0" else text
    return str(value)


def write_csv(path: Path, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([fmt(v) for v in row])
    return path


def write_report(path: Path, lines: Iterable[Tuple[str, Any]]) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    body = "".join(f"{key} = {value if isinstance(value, str) else fmt(value)}\n" for key, value in lines)
    path.write_text(body, encoding="utf-8")
    return path


# ---------------------------------------------------------------------------
# Report bodies
# ---------------------------------------------------------------------------

def solution_lines(spec: MarketSpec, solution: MechanismSolution) -> List[Tuple[str, Any]]:
    rule = solution.rule
    diag = solution.diagnostics
    breakdown = solution.breakdown
    lines: List[Tuple[str, Any]] = [
        ("market", spec.name),
        ("objective", solution.objective.value),
        ("grid_n", solution.grid_n),
        ("delta_S", f"{rule.seller.delta:.6f}"),
        ("delta_B", f"{rule.buyer.delta:.6f}"),
        ("pattern", solution.patterns.pattern_line()),
        ("top_reserved", solution.patterns.top_reserved_line()),
        ("objective_value", breakdown.value),
        ("Z_W", breakdown.welfare),
        ("Z_R", breakdown.revenue),
        ("Z_R_virtual", breakdown.revenue_virtual),
        ("regularity_weak", "pass" if diag.regularity.weak_pass else "fail"),
        ("regularity_strict", "pass" if diag.regularity.strict_pass else "fail"),
        ("unique_lowest_type", diag.uniqueness_precondition),
    ]
    for side in Side:
        lines.append((f"monotone_{side.short}", diag.monotone.get(side.value, True)))
    for side in Side:
        lines.append((f"reciprocity_err_{side.short}", diag.reciprocity_err.get(side.value, 0.0)))
    lines.append(("flags", ", ".join(diag.flags) or "none"))
    for key, value in spec.describe().items():
        if key not in ("name",):
            lines.append((key, value))
    return lines


def audit_lines(report: AuditReport) -> List[Tuple[str, Any]]:
    lines: List[Tuple[str, Any]] = [("objective", report.objective)]
    for key, value in report.grids.items():
        lines.append((key, value))
    for metric in ("ic_max_gain", "ir_min_payoff", "ir_lowest_payoff", "icfoc_max_err", "reciprocity_max_err"):
        values = getattr(report, metric)
        for side in Side:
            lines.append((f"{metric}_{side.short}", values.get(side.value, 0.0)))
    lines.append(("objective_cross_err", report.objective_cross_err))
    lines.append(("failures", ", ".join(report.failures()) or "none"))
    lines.append(("verdict", report.verdict))
    return lines


def sim_lines(result: SimResult) -> List[Tuple[str, Any]]:
    lines: List[Tuple[str, Any]] = [
        ("seed", result.seed),
        ("n_sellers", result.n_sellers),
        ("n_buyers", result.n_buyers),
        ("welfare_per_capita", result.welfare),
        ("welfare_se", result.welfare_se),
        ("revenue_per_capita", result.revenue),
        ("revenue_se", result.revenue_se),
    ]
    for side in Side:
        lines.append((f"mean_utility_{side.short}", result.mean_utility[side.value]))
        lines.append((f"mean_payment_{side.short}", result.mean_payment[side.value]))
        lines.append((f"pair_mass_{side.short}", result.pair_mass[side.value]))
    return lines


def sim_rows(result: SimResult):
    for side in Side:
        rec = result.records(side)
        for t, m, u, p in zip(rec.types.tolist(), rec.matched_mass.tolist(), rec.utility.tolist(), rec.payment.tolist()):
            yield side.value, t, m, u, p


SIM_HEADER = ("side", "type", "matched_mass", "utility", "payment")
