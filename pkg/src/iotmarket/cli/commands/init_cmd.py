"""
iotmarket init
--------------
Copies the bundled example market into a working directory so it can be
edited and passed back with --market.
"""

from __future__ import annotations
from pathlib import Path
import shutil

from ..market_file import BUNDLED_MARKETS

EXAMPLE = "paper_example.market"


def cmd_init(args) -> int:
    out = Path(args.dir)
    out.mkdir(parents=True, exist_ok=True)
    target = out / EXAMPLE
    shutil.copyfile(BUNDLED_MARKETS / EXAMPLE, target)
    print(f"wrote {target}")
    return 0
