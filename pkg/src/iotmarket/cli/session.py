# iotmarket/cli/session.py
"""
Command Session
---------------

Shared plumbing for the commands that work on a market file:
  • load and validate the market
  • merge flags, [options] and environment into a RunConfig
  • solve and write the solution files
"""

from __future__ import annotations
from argparse import Namespace
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional

from ..market import MarketSpec, Side
from ..mechanism import Objective
from ..solver import MechanismSolution, solve_mechanism
from .market_file import MarketDocument, load_document
from .outputs import solution_lines, write_csv, write_report
from .run_config import RunConfig

FLAG_KEYS = (
    "objective",
    "grid_n",
    "audit_n",
    "seed",
    "n_sellers",
    "n_buyers",
    "out_dir",
    "sweep_n",
    "quad_abs",
    "quad_rel",
    "root_x",
    "max_depth",
)


@dataclass(frozen=True)
class Session:
    document: MarketDocument
    config: RunConfig

    @property
    def spec(self) -> MarketSpec:
        return self.document.spec

    @property
    def out_dir(self) -> Path:
        return self.config.out_dir


def flags_from(args: Namespace) -> Dict[str, Any]:
    return {key: getattr(args, key, None) for key in FLAG_KEYS}


def open_session(args: Namespace) -> Session:
    doc = load_document(args.market)
    config = RunConfig.resolve(Path(doc.path), flags_from(args), doc.options)
    return Session(document=doc, config=config)


def solve(session: Session, objective: Optional[Objective] = None) -> MechanismSolution:
    cfg = session.config
    return solve_mechanism(session.spec, objective or cfg.objective, cfg.grid_n, cfg.tolerances)


def write_solution(out_dir: Path, spec: MarketSpec, solution: MechanismSolution) -> List[Path]:
    written = []
    for side in Side:
        cutoff = solution.rule.side(side)
        written.append(write_csv(out_dir / f"rule_{side.value}.csv", ("lambda", "tau"), zip(cutoff.lam, cutoff.tau)))
    for side in Side:
        sched = solution.payments.side(side)
        written.append(write_csv(out_dir / f"payments_{side.value}.csv", ("lambda", "phi"), zip(sched.lam, sched.phi)))
    written.append(write_report(out_dir / "solution.txt", solution_lines(spec, solution)))
    return written


def print_written(paths: List[Path]) -> None:
    for path in paths:
        print(f"wrote {path}")
