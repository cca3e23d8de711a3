"""JSON serialisation of reports and the schemas they follow."""
from __future__ import annotations

import json
import math
from importlib import resources

import numpy as np

SCHEMA_NAMES = ("classify", "characteristic", "verify", "generate")


def jsonable(obj):
    """Plain JSON types; non-finite floats become null."""
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return x if math.isfinite(x) else None
    if isinstance(obj, np.ndarray):
        return jsonable(obj.tolist())
    if hasattr(obj, "value") and isinstance(obj.value, str):  # enums
        return obj.value
    return obj


def dumps(obj) -> str:
    """Indented UTF-8 JSON with insertion key order and a trailing newline."""
    return json.dumps(jsonable(obj), indent=2, ensure_ascii=False, allow_nan=False) + "\n"


def load_schema(name: str) -> dict:
    if name not in SCHEMA_NAMES:
        raise KeyError(name)
    text = resources.files("riemann_zmc").joinpath("schemas", f"{name}.schema.json").read_text("utf-8")
    return json.loads(text)


__all__ = ["SCHEMA_NAMES", "dumps", "jsonable", "load_schema"]
