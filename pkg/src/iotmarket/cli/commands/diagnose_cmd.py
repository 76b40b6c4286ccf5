"""
iotmarket diagnose
------------------
Prints interpreter, library and host facts as JSON.
"""

from __future__ import annotations
import json
import platform

import numpy
import psutil
import pydantic
import yaml

from ... import __version__
from ...config import settings
from ..market_file import BUNDLED_MARKETS


def cmd_diagnose(args) -> int:
    memory = psutil.virtual_memory()
    info = {
        "python": platform.python_version(),
        "system": platform.system(),
        "release": platform.release(),
        "iotmarket": {"version": __version__, "bundled_markets": sorted(p.stem for p in BUNDLED_MARKETS.glob("*.market"))},
        "libraries": {"numpy": numpy.__version__, "pydantic": pydantic.VERSION, "pyyaml": yaml.__version__},
        "host": {
            "cpu_count": psutil.cpu_count(logical=True),
            "cpu_percent": psutil.cpu_percent(interval=None),
            "memory_total_mb": round(memory.total / 2**20),
            "memory_available_mb": round(memory.available / 2**20),
        },
        "defaults": {
            "grid_n": settings.GRID_N,
            "audit_n": settings.AUDIT_N,
            "seed": settings.SEED,
            "log_level": settings.LOG_LEVEL,
        },
    }
    print(json.dumps(info, indent=2))
    return 0
