import os
from typing import Optional

from .constants import DEFAULT_AUDIT_N, DEFAULT_GRID_N


class Settings:
    """Environment defaults; every value can be overridden by a market file or CLI flag."""

    def __init__(self):
        self.GRID_N = int(os.getenv("IOTMARKET_GRID_N", DEFAULT_GRID_N))
        self.AUDIT_N = int(os.getenv("IOTMARKET_AUDIT_N", DEFAULT_AUDIT_N))
        self.SEED = int(os.getenv("IOTMARKET_SEED", 20240601))
        self.LOG_LEVEL = os.getenv("IOTMARKET_LOG_LEVEL", "WARNING").upper()
        self.LOG_FORMAT = os.getenv("IOTMARKET_LOG_FORMAT", "json").lower()
        self.OUT_DIR: Optional[str] = os.getenv("IOTMARKET_OUT_DIR")
        self.N_SELLERS = int(os.getenv("IOTMARKET_N_SELLERS", 10000))
        self.N_BUYERS = int(os.getenv("IOTMARKET_N_BUYERS", 10000))


settings = Settings()
