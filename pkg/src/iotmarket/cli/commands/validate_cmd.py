"""
iotmarket validate
------------------
Samples the standing assumptions on a grid and prints each violation
with its witness. Exit status 1 when anything is violated.
"""

from __future__ import annotations
import logging

from ...market import validate_spec
from ..market_file import VALIDATION_GRID, read_market

logger = logging.getLogger("iotmarket.cli")


def cmd_validate(args) -> int:
    doc = read_market(args.market)
    grid_n = args.grid_n or VALIDATION_GRID
    report = validate_spec(doc.spec, grid_n)
    for violation in report.violations:
        print(violation.describe())
    logger.info({"event": "cli.validate", "market": doc.path, "grid_n": grid_n, "violations": len(report.violations)})
    if report.ok:
        print(f"{doc.spec.name}: ok ({grid_n}x{grid_n} lattice)")
        return 0
    return 1
