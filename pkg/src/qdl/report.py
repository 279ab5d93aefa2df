"""Versioned JSON reports.

Serialization is done by hand so that the output is byte-stable: keys keep
insertion order, floats carry 17 significant digits, exact rationals become
``"p/q"`` strings and complex numbers ``{"re": .., "im": ..}``.
"""

from __future__ import annotations

import json
import math
import sys
from dataclasses import dataclass, field
from fractions import Fraction

SCHEMA = "qdl/1"


def _float(v: float) -> str:
    if math.isnan(v):
        return '"nan"'
    if math.isinf(v):
        return '"inf"' if v > 0 else '"-inf"'
    text = format(v, ".17g")
    if all(c not in text for c in ".en"):
        text += ".0"
    return text


def _jsonable(obj):
    """Map package objects to JSON-compatible values (floats kept as float)."""
    from .algebra import GaussRational, MPoly

    if obj is None or isinstance(obj, (bool, str, int, float)):
        return obj
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (GaussRational, MPoly)):
        return str(obj)
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    if hasattr(obj, "to_dict"):
        return _jsonable(obj.to_dict())
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    try:
        import numpy as np
        if isinstance(obj, np.generic):
            return _jsonable(obj.item())
        if isinstance(obj, np.ndarray):
            return _jsonable(obj.tolist())
    except ImportError:  # pragma: no cover
        pass
    if isinstance(obj, float):
        return obj
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _emit(obj, out: list, indent: int, level: int):
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, bool) or obj is None:
        out.append(json.dumps(obj))
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        out.append(_float(obj))
    elif isinstance(obj, str):
        out.append(json.dumps(obj, ensure_ascii=False))
    elif isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{\n")
        for k, (key, v) in enumerate(obj.items()):
            out.append(pad + json.dumps(key, ensure_ascii=False) + ": ")
            _emit(v, out, indent, level + 1)
            out.append(",\n" if k < len(obj) - 1 else "\n")
        out.append(end + "}")
    else:
        if not obj:
            out.append("[]")
            return
        if all(not isinstance(v, (dict, list)) for v in obj):
            out.append("[")
            for k, v in enumerate(obj):
                _emit(v, out, indent, level + 1)
                if k < len(obj) - 1:
                    out.append(", ")
            out.append("]")
            return
        out.append("[\n")
        for k, v in enumerate(obj):
            out.append(pad)
            _emit(v, out, indent, level + 1)
            out.append(",\n" if k < len(obj) - 1 else "\n")
        out.append(end + "]")


def dumps(obj, indent: int = 2) -> str:
    out: list = []
    _emit(_jsonable(obj), out, indent, 0)
    return "".join(out) + "\n"


def versions() -> dict:
    from . import __version__
    return {"qdl": __version__, "python": f"{sys.version_info.major}.{sys.version_info.minor}"}


@dataclass
class RunReport:
    command: str
    inputs: dict = field(default_factory=dict)
    results: dict = field(default_factory=dict)
    warnings: list = field(default_factory=list)
    error: dict | None = None

    def to_dict(self) -> dict:
        d = {"schema": SCHEMA, "command": self.command, "inputs": self.inputs,
             "results": self.results, "warnings": self.warnings, "versions": versions()}
        if self.error is not None:
            d["error"] = self.error
        return d

    def to_json(self) -> str:
        return dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "RunReport":
        d = json.loads(text)
        if d.get("schema") != SCHEMA:
            raise ValueError(f"unsupported report schema {d.get('schema')!r}")
        return cls(command=d["command"], inputs=d["inputs"], results=d["results"],
                   warnings=d["warnings"], error=d.get("error"))
