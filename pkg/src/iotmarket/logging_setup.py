import logging
import sys
import json
import time

_RESERVED = ("timestamp", "level", "name", "message")


class JsonFormatter(logging.Formatter):
    def format(self, record):
        payload = {
            "timestamp": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime(record.created)),
            "level": record.levelname,
            "name": record.name,
        }
        if isinstance(record.msg, dict):
            for key, value in record.msg.items():
                payload[key if key not in _RESERVED else f"field_{key}"] = value
        else:
            payload["message"] = record.getMessage()
        if record.exc_info:
            payload["exc_info"] = self.formatException(record.exc_info)
        return json.dumps(payload, default=str)


class TextFormatter(logging.Formatter):
    def __init__(self):
        super().__init__("%(asctime)s %(levelname)s %(name)s: %(message)s")

    def format(self, record):
        if isinstance(record.msg, dict):
            record = logging.makeLogRecord(record.__dict__)
            record.msg = " ".join(f"{k}={v}" for k, v in record.msg.items())
            record.args = None
        return super().format(record)


def configure_logging(level=logging.INFO, fmt: str = "json", stream=None):
    handler = logging.StreamHandler(stream or sys.stderr)
    handler.setFormatter(TextFormatter() if fmt == "text" else JsonFormatter())
    root = logging.getLogger()
    if isinstance(level, str):
        level = logging.getLevelName(level.upper())
    root.setLevel(level)
    root.handlers = [handler]
    return root
