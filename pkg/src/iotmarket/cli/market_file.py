# iotmarket/cli/market_file.py
"""
Market Files
------------

Reader for the `.market` text format:

    [seller] / [buyer]   support = [lo, hi], dist = uniform | power,
                         power_k = <number>, gamma = "<expr in lam>"
    [kernels]            R_S, R_B = "<expr in lam, x>"  or  M_S, M_B = "<expr in r, lam>"
    [options]            objective, grid_n, audit_n, seed, n_sellers, n_buyers,
                         quad_abs, quad_rel, root_x, max_depth

`key = value` lines, `#` comments, whitespace-insensitive. Right-hand sides
are decoded as YAML scalars or flow lists. Every error carries the line and
column it was found at.
"""

from __future__ import annotations
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Optional, Union
import logging
import re

import yaml
from pydantic import ValidationError

from ..constants import MIN_VALIDATION_GRID
from ..exprlang import (
    ExprError,
    ExprSyntaxError,
    UnknownFunctionError,
    UnknownIdentifierError,
    parse,
)
from ..market import (
    GAMMA_SIGNATURE,
    KERNEL_SIGNATURE,
    PRIMITIVE_SIGNATURE,
    MarketError,
    MarketSpec,
    SideSpec,
    make_distribution,
    validate_spec,
)
from .cli_exceptions import MarketFileError

logger = logging.getLogger("iotmarket.cli")

BUNDLED_MARKETS = Path(__file__).resolve().parent.parent / "markets"
VALIDATION_GRID = 64

_SECTION = re.compile(r"\[\s*([A-Za-z_][A-Za-z0-9_]*)\s*\]\Z")
_ENTRY = re.compile(r"([A-Za-z_][A-Za-z0-9_]*)\s*=\s*")

SIDE_KEYS = ("support", "dist", "power_k", "gamma")
KERNEL_KEYS = ("R_S", "R_B", "M_S", "M_B")
OPTION_KEYS = (
    "objective", "grid_n", "audit_n", "seed", "n_sellers", "n_buyers",
    "quad_abs", "quad_rel", "root_x", "max_depth",
)
SECTIONS = {"seller": SIDE_KEYS, "buyer": SIDE_KEYS, "kernels": KERNEL_KEYS, "options": OPTION_KEYS}
REQUIRED_SECTIONS = ("seller", "buyer", "kernels")
INT_OPTIONS = ("grid_n", "audit_n", "seed", "n_sellers", "n_buyers", "max_depth")
FLOAT_OPTIONS = ("quad_abs", "quad_rel", "root_x")


@dataclass
class Entry:
    key: str
    value: Any
    raw: str
    line: int
    column: int  # 1-based column where the value starts

    @property
    def quoted(self) -> bool:
        return self.raw[:1] in ("'", '"')


@dataclass
class Section:
    name: str
    line: int
    entries: Dict[str, Entry] = field(default_factory=dict)


@dataclass
class MarketDocument:
    path: str
    spec: MarketSpec
    options: Dict[str, Any]


# ---------------------------------------------------------------------------
# Lexing
# ---------------------------------------------------------------------------

def _strip_comment(text: str) -> str:
    quote = None
    for i, ch in enumerate(text):
        if quote:
            if ch == quote:
                quote = None
        elif ch in ("'", '"'):
            quote = ch
        elif ch == "#":
            return text[:i]
    return text


def _decode(raw: str, path: str, line: int, column: int) -> Any:
    try:
        value = yaml.safe_load(raw)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        offset = mark.column if mark is not None else 0
        problem = getattr(exc, "problem", None) or "malformed value"
        raise MarketFileError(f"cannot decode value {raw!r}: {problem}", path, line, column + offset) from None
    if value is None:
        raise MarketFileError("empty value", path, line, column)
    return value


def parse_sections(text: str, path: str = "") -> Dict[str, Section]:
    sections: Dict[str, Section] = {}
    current: Optional[Section] = None
    for lineno, original in enumerate(text.splitlines(), start=1):
        body = _strip_comment(original).rstrip()
        stripped = body.strip()
        if not stripped:
            continue
        indent = len(body) - len(body.lstrip())

        m = _SECTION.match(stripped)
        if m:
            name = m.group(1)
            if name not in SECTIONS:
                raise MarketFileError(
                    f"unknown section [{name}] (expected one of {', '.join(SECTIONS)})", path, lineno, indent + 1,
                )
            if name in sections:
                raise MarketFileError(f"duplicate section [{name}]", path, lineno, indent + 1)
            current = sections[name] = Section(name, lineno)
            continue

        m = _ENTRY.match(stripped)
        if not m:
            raise MarketFileError("expected '[section]' or 'key = value'", path, lineno, indent + 1)
        key = m.group(1)
        if current is None:
            raise MarketFileError(f"key {key!r} outside any section", path, lineno, indent + 1)
        if key not in SECTIONS[current.name]:
            raise MarketFileError(
                f"unknown key {key!r} in [{current.name}] (expected one of {', '.join(SECTIONS[current.name])})",
                path, lineno, indent + 1,
            )
        if key in current.entries:
            raise MarketFileError(f"duplicate key {key!r} in [{current.name}]", path, lineno, indent + 1)
        raw = stripped[m.end():]
        column = indent + m.end() + 1
        current.entries[key] = Entry(key, _decode(raw, path, lineno, column), raw, lineno, column)

    for name in REQUIRED_SECTIONS:
        if name not in sections:
            raise MarketFileError(f"missing section [{name}]", path)
    return sections


# ---------------------------------------------------------------------------
# Building
# ---------------------------------------------------------------------------

def _number(entry: Entry, value: Any, path: str) -> float:
    if isinstance(value, bool):
        raise MarketFileError(f"{entry.key}: expected a number, got {value!r}", path, entry.line, entry.column)
    try:
        return float(value)
    except (TypeError, ValueError):
        raise MarketFileError(f"{entry.key}: expected a number, got {value!r}", path, entry.line, entry.column) from None


def _expression(entry: Entry, signature, path: str):
    source = entry.value
    if isinstance(source, bool) or not isinstance(source, (str, int, float)):
        raise MarketFileError(f"{entry.key}: expected an expression, got {source!r}", path, entry.line, entry.column)
    try:
        return parse(str(source), signature)
    except (ExprSyntaxError, UnknownIdentifierError, UnknownFunctionError) as exc:
        column = entry.column + int(entry.quoted) + exc.position
        raise MarketFileError(f"{entry.key}: {exc}", path, entry.line, column) from None
    except ExprError as exc:
        raise MarketFileError(f"{entry.key}: {exc}", path, entry.line, entry.column) from None


def _require(section: Section, key: str, path: str) -> Entry:
    if key not in section.entries:
        raise MarketFileError(f"missing key {key!r} in [{section.name}]", path, section.line)
    return section.entries[key]


def _errors(exc: Exception) -> str:
    if isinstance(exc, ValidationError):
        return "; ".join(err["msg"] for err in exc.errors())
    return str(exc)


def _side(section: Section, path: str) -> SideSpec:
    support = _require(section, "support", path)
    if not isinstance(support.value, list) or len(support.value) != 2:
        raise MarketFileError("support: expected [lo, hi]", path, support.line, support.column)
    lo, hi = (_number(support, v, path) for v in support.value)

    dist = section.entries.get("dist")
    kind = str(dist.value) if dist is not None else "uniform"
    power_k = section.entries.get("power_k")
    k = _number(power_k, power_k.value, path) if power_k is not None else None
    at = dist if dist is not None else support
    try:
        distribution = make_distribution(kind, lo, hi, k)
    except (ValidationError, MarketError) as exc:
        anchor = support if "support" in _errors(exc) else at
        raise MarketFileError(f"[{section.name}] {_errors(exc)}", path, anchor.line, anchor.column) from None

    gamma = _expression(_require(section, "gamma", path), GAMMA_SIGNATURE, path)
    return SideSpec(distribution=distribution, gamma=gamma)


def _options(section: Optional[Section], path: str) -> Dict[str, Any]:
    if section is None:
        return {}
    options: Dict[str, Any] = {}
    for key, entry in section.entries.items():
        value = entry.value
        if key in INT_OPTIONS:
            number = _number(entry, value, path)
            if not number.is_integer():
                raise MarketFileError(f"{key}: expected an integer, got {value!r}", path, entry.line, entry.column)
            options[key] = int(number)
        elif key in FLOAT_OPTIONS:
            options[key] = _number(entry, value, path)
        else:
            options[key] = str(value)
    return options


def parse_market(text: str, path: str = "", name: Optional[str] = None) -> MarketDocument:
    sections = parse_sections(text, path)
    kernels_section = sections["kernels"]
    kernels = {}
    for key, entry in kernels_section.entries.items():
        signature = KERNEL_SIGNATURE if key.startswith("R_") else PRIMITIVE_SIGNATURE
        kernels[key] = _expression(entry, signature, path)
    try:
        spec = MarketSpec(
            name=name or (Path(path).stem if path else "market"),
            seller=_side(sections["seller"], path),
            buyer=_side(sections["buyer"], path),
            **kernels,
        )
    except ValidationError as exc:
        raise MarketFileError(f"[kernels] {_errors(exc)}", path, kernels_section.line) from None
    return MarketDocument(path=path, spec=spec, options=_options(sections.get("options"), path))


def resolve_market_path(name: Union[str, Path]) -> Path:
    """A file path, or the name of a bundled market."""
    p = Path(name)
    if p.is_file():
        return p
    for candidate in (BUNDLED_MARKETS / str(name), BUNDLED_MARKETS / f"{name}.market"):
        if candidate.is_file():
            return candidate
    raise MarketFileError("market file not found", str(name))


def read_market(path: Union[str, Path]) -> MarketDocument:
    resolved = resolve_market_path(path)
    try:
        text = resolved.read_bytes().decode("utf-8")
    except UnicodeDecodeError as exc:
        raise MarketFileError(f"not UTF-8 text ({exc.reason} at byte {exc.start})", str(resolved)) from None
    doc = parse_market(text, str(resolved))
    logger.debug({"event": "market.loaded", "path": str(resolved), "mode": doc.spec.mode, "options": doc.options})
    return doc


def load_document(path: Union[str, Path], grid_n: int = VALIDATION_GRID) -> MarketDocument:
    """Parse and validate a market file; validation violations are raised with their witnesses."""
    doc = read_market(path)
    report = validate_spec(doc.spec, max(grid_n, MIN_VALIDATION_GRID))
    if not report.ok:
        details = "; ".join(v.describe() for v in report.violations)
        raise MarketFileError(f"validation failed: {details}", doc.path)
    return doc


def load_market(path: Union[str, Path], grid_n: int = VALIDATION_GRID) -> MarketSpec:
    return load_document(path, grid_n).spec
