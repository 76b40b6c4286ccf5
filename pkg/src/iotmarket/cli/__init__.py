# iotmarket/cli/__init__.py

from .cli import build_parser, main

__all__ = ["build_parser", "main"]
