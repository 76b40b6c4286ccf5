"""
iotmarket simulate
------------------
Draws seeded finite populations, applies the solved mechanism and writes
sim.csv (one row per agent) and sim_summary.txt.
"""

from __future__ import annotations

from ...simulator import SimConfig, simulate
from ..outputs import SIM_HEADER, sim_lines, sim_rows, write_csv, write_report
from ..session import open_session, print_written, solve


def cmd_simulate(args) -> int:
    session = open_session(args)
    cfg = session.config
    solution = solve(session)
    result = simulate(SimConfig(
        spec=session.spec,
        solution=solution,
        n_sellers=cfg.n_sellers,
        n_buyers=cfg.n_buyers,
        seed=cfg.seed,
    ))
    print_written([
        write_csv(session.out_dir / "sim.csv", SIM_HEADER, sim_rows(result)),
        write_report(session.out_dir / "sim_summary.txt", sim_lines(result)),
    ])
    return 0
