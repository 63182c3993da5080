"""Report payloads: JSON is the machine interface, text is rendered from it."""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from typing import Any, Dict, List

from .gb import LocalIdeal, ideal_str, krull_dimension


def digest(text: str) -> str:
    return "sha256:" + hashlib.sha256(text.encode("utf-8")).hexdigest()


def ideal_payload(I: LocalIdeal) -> str:
    return ideal_str(I)


def dimension_of(I: LocalIdeal) -> int:
    return krull_dimension(I)


def _plain(obj: Any) -> Any:
    if isinstance(obj, Fraction):
        return str(obj) if obj.denominator != 1 else obj.numerator
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    return obj


def make_report(command: str, text: str, config: Dict[str, Any], result: Dict[str, Any], flags: List[str]) -> Dict[str, Any]:
    return {
        "command": command,
        "input_digest": digest(text),
        "config": _plain(config),
        "result": _plain(result),
        "flags": sorted(set(flags)),
    }


def render_json(report: Dict[str, Any]) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def _text_lines(prefix: str, value: Any, out: List[str]):
    if isinstance(value, dict):
        for k in sorted(value):
            _text_lines(f"{prefix}.{k}" if prefix else k, value[k], out)
    elif isinstance(value, list) and value and all(isinstance(v, dict) for v in value):
        for i, v in enumerate(value):
            _text_lines(f"{prefix}[{i}]", v, out)
    elif isinstance(value, list):
        out.append(f"{prefix}\t" + " | ".join(str(v) for v in value))
    else:
        out.append(f"{prefix}\t{value}")


def render_text(report: Dict[str, Any]) -> str:
    """Tab-delimited key/value lines, one section per top-level field."""
    out = [f"=== germcrit {report['command']} ==="]
    for section in ("result", "flags", "config"):
        out.append(f"--- {section} ---")
        value = report.get(section)
        if section == "flags":
            out.extend(value or ["(none)"])
        else:
            _text_lines("", value, out)
    out.append("--- input ---")
    out.append(f"digest\t{report['input_digest']}")
    if "wall_time_s" in report:
        out.append(f"wall_time_s\t{report['wall_time_s']}")
    return "\n".join(out) + "\n"
