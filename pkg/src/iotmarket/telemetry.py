# iotmarket/telemetry.py
"""
Telemetry
---------

Timing spans around the expensive stages (solve, payments, audits,
simulation). Spans are emitted as structured log records on the
`iotmarket.telemetry` logger.
"""

from __future__ import annotations
from contextlib import contextmanager
from typing import Any, Dict, Iterator
import logging
import time
import uuid

logger = logging.getLogger("iotmarket.telemetry")


@contextmanager
def span(name: str, **context: Any) -> Iterator[Dict[str, Any]]:
    """
    Log `span.start` / `span.end` around a block.

    The yielded dict may be filled with result fields; they are attached
    to the end record.
    """
    span_id = uuid.uuid4().hex[:12]
    start = time.perf_counter()
    result: Dict[str, Any] = {}
    logger.debug({"event": "span.start", "span": name, "span_id": span_id, **context})
    try:
        yield result
    except Exception as exc:
        logger.info({
            "event": "span.end",
            "span": name,
            "span_id": span_id,
            "duration_s": round(time.perf_counter() - start, 6),
            "status": "error",
            "error": str(exc),
        })
        raise
    logger.info({
        "event": "span.end",
        "span": name,
        "span_id": span_id,
        "duration_s": round(time.perf_counter() - start, 6),
        "status": "ok",
        **result,
    })
