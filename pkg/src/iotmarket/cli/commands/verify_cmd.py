"""
iotmarket verify
----------------
Solves, then audits the mechanism (IC, IR, ICFOC, reciprocity and the
objective cross-check) and writes audit.txt next to the solution files.
Exit status 1 on a FAIL verdict.
"""

from __future__ import annotations
import logging

from ...verification import audit
from ..outputs import audit_lines, write_report
from ..session import open_session, print_written, solve, write_solution

logger = logging.getLogger("iotmarket.cli")


def cmd_verify(args) -> int:
    session = open_session(args)
    cfg = session.config
    solution = solve(session)
    written = write_solution(session.out_dir, session.spec, solution)
    report = audit(session.spec, solution, cfg.audit_n, cfg.audit_n, cfg.audit_n, cfg.tolerances)
    written.append(write_report(session.out_dir / "audit.txt", audit_lines(report)))
    print_written(written)
    print(f"verdict = {report.verdict}")
    if not report.passed:
        logger.warning({"event": "cli.verify.failed", "failures": report.failures()})
        return 1
    return 0
