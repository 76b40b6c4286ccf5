# iotmarket/registry.py
"""
Registry
--------

A small name → item registry. Distribution families and fault injections
register here, so `dist = <name>` and mutation names resolve by lookup.
"""

from typing import Any, Dict
import logging

logger = logging.getLogger("iotmarket.registry")


class Registry:
    def __init__(self, kind: str = "item"):
        self.kind = kind
        self._items: Dict[str, Any] = {}

    def register(self, name: str, item: Any = None):
        """Register `item` under `name`; usable as a class decorator when `item` is omitted."""
        if item is None:
            def decorator(obj):
                self.register(name, obj)
                return obj
            return decorator
        if name in self._items:
            logger.warning(f"[Registry] Overwriting existing {self.kind}: {name}")
        self._items[name] = item
        logger.debug(f"[Registry] Registered {self.kind} '{name}' → {item}")
        return item

    def get(self, name: str) -> Any:
        if name not in self._items:
            raise KeyError(f"Unknown {self.kind} '{name}' (known: {', '.join(sorted(self._items))})")
        return self._items[name]

    def names(self):
        return sorted(self._items)

    def all(self) -> Dict[str, Any]:
        return dict(self._items)
