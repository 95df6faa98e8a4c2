"""Deterministic JSON reports.

Floats are printed with 17 significant digits so that identical runs produce
byte-identical files; non-finite floats become null.
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any

import numpy as np

from zygmund.errors import ZygmundError

SCHEMA = "zygmund-cwt/1"
INDENT = "  "


def format_float(value: float) -> str:
    if not math.isfinite(value):
        return "null"
    text = format(value, ".17g")
    if "e" not in text and "." not in text:
        text += ".0"
    return text


def _encode(value: Any, depth: int) -> str:
    pad, inner = INDENT * depth, INDENT * (depth + 1)
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if value is None:
        return "null"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format_float(float(value))
    if isinstance(value, str):
        return json.dumps(value, ensure_ascii=False)
    if isinstance(value, Path):
        return json.dumps(str(value), ensure_ascii=False)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [
            f"{inner}{json.dumps(str(key), ensure_ascii=False)}: {_encode(item, depth + 1)}"
            for key, item in value.items()
        ]
        return "{\n" + ",\n".join(items) + f"\n{pad}}}"
    if isinstance(value, (list, tuple, np.ndarray)):
        items_list = list(value.tolist() if isinstance(value, np.ndarray) else value)
        if not items_list:
            return "[]"
        return "[\n" + ",\n".join(f"{inner}{_encode(item, depth + 1)}" for item in items_list) + f"\n{pad}]"
    if hasattr(value, "to_dict"):
        return _encode(value.to_dict(), depth)
    raise TypeError(f"cannot serialise {type(value).__name__} into a report")


def dumps(payload: Any) -> str:
    return _encode(payload, 0) + "\n"


def build_report(
    command: str,
    config: dict[str, Any],
    result: Any = None,
    error: ZygmundError | None = None,
    seed: int | None = None,
) -> dict[str, Any]:
    return {
        "schema": SCHEMA,
        "command": command,
        "status": "error" if error is not None else "ok",
        "seed": seed,
        "config": config,
        "result": result,
        "error": error.to_dict() if error is not None else None,
    }


def write_report(report: dict[str, Any], path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps(report), encoding="utf-8")
    return path
