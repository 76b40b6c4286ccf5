"""
iotmarket report
----------------
Both objectives side by side:
  • report.txt   thresholds, patterns, Z_W, Z_R and audit verdicts
  • sweep.csv    objective value of the block rules δ^K = lo + q·width
  • marginal_<side>.csv   marginal contribution of each matched type
"""

from __future__ import annotations
from typing import Any, List, Tuple

from ...market import Side
from ...mechanism import Objective, marginal_profile, threshold_sweep
from ...verification import audit
from ..outputs import write_csv, write_report
from ..session import open_session, print_written, solve


def cmd_report(args) -> int:
    session = open_session(args)
    cfg = session.config
    spec = session.spec
    lines: List[Tuple[str, Any]] = [("market", spec.name)]
    solutions = {}
    for obj in Objective:
        solution = solve(session, obj)
        solutions[obj] = solution
        verdict = audit(spec, solution, cfg.audit_n, cfg.audit_n, cfg.audit_n, cfg.tolerances).verdict
        prefix = obj.value
        lines += [
            (f"{prefix}.delta_S", f"{solution.rule.seller.delta:.6f}"),
            (f"{prefix}.delta_B", f"{solution.rule.buyer.delta:.6f}"),
            (f"{prefix}.pattern", solution.patterns.pattern_line()),
            (f"{prefix}.top_reserved", solution.patterns.top_reserved_line()),
            (f"{prefix}.Z_W", solution.breakdown.welfare),
            (f"{prefix}.Z_R", solution.breakdown.revenue),
            (f"{prefix}.audit", verdict),
        ]

    written = [write_report(session.out_dir / "report.txt", lines)]
    written.append(write_csv(
        session.out_dir / "sweep.csv",
        ("q", "delta_S", "delta_B", "value"),
        threshold_sweep(spec, cfg.objective, cfg.sweep_n, cfg.tolerances),
    ))
    chosen = solutions[cfg.objective]
    for side in Side:
        written.append(write_csv(
            session.out_dir / f"marginal_{side.value}.csv",
            ("lambda", "marginal"),
            marginal_profile(spec, cfg.objective, chosen.rule, side, cfg.tolerances),
        ))
    print_written(written)
    return 0
