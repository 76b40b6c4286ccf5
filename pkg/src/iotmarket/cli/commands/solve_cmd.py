"""
iotmarket solve
---------------
Solves the cut-off mechanism for one objective and writes
rule_<side>.csv, payments_<side>.csv and solution.txt.
"""

from __future__ import annotations

from ..session import open_session, print_written, solve, write_solution


def cmd_solve(args) -> int:
    session = open_session(args)
    solution = solve(session)
    print_written(write_solution(session.out_dir, session.spec, solution))
    return 0
