"""
JSON helpers. Integers wider than a double's 53-bit mantissa are written
as decimal strings; readers accept either form.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Any

from .quiver import NAMED_QUIVERS, ExchangeMatrix

SAFE_INT = 2**53


def jsonable(x: Any) -> Any:
    if isinstance(x, bool) or x is None or isinstance(x, (str, float)):
        return x
    if isinstance(x, int):
        return str(x) if abs(x) >= SAFE_INT else x
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = sorted(x) if isinstance(x, (set, frozenset)) else x
        return [jsonable(v) for v in items]
    if hasattr(x, "to_dict"):
        return jsonable(x.to_dict())
    raise TypeError(f"cannot serialize {type(x).__name__}")


def parse_int(v: Any) -> int:
    if isinstance(v, bool):
        raise ValueError(f"expected an integer, got {v!r}")
    if isinstance(v, int):
        return v
    if isinstance(v, str) and v.strip().lstrip("+-").isdigit():
        return int(v)
    raise ValueError(f"expected an integer or decimal string, got {v!r}")


def dumps(x: Any, **kw) -> str:
    return json.dumps(jsonable(x), **kw)


def digest(x: Any) -> str:
    """sha256 of the canonical JSON form of ``x``."""
    return hashlib.sha256(dumps(x, sort_keys=True, separators=(",", ":")).encode()).hexdigest()


def quiver_to_json(b: ExchangeMatrix) -> dict[str, Any]:
    return {"n": b.n, "b": jsonable(b.b)}


def quiver_from_json(obj: Any) -> ExchangeMatrix:
    if not isinstance(obj, dict) or "b" not in obj:
        raise ValueError('quiver JSON must be an object with key "b"')
    rows = obj["b"]
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise ValueError('"b" must be a list of rows')
    b = ExchangeMatrix(tuple(tuple(parse_int(x) for x in row) for row in rows))
    if "n" in obj and parse_int(obj["n"]) != b.n:
        raise ValueError(f'"n" = {obj["n"]} but the matrix has {b.n} rows')
    return b


def load_quiver(spec: str) -> ExchangeMatrix:
    """A built-in name (``markov``, ``q233``, ...) or the path of a quiver JSON file."""
    key = spec.strip().lower()
    if key in NAMED_QUIVERS:
        return NAMED_QUIVERS[key]
    path = Path(spec)
    if not path.is_file():
        raise ValueError(f"unknown quiver {spec!r}: not a built-in name or a file")
    try:
        obj = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ValueError(f"{spec}: invalid JSON ({exc})") from None
    return quiver_from_json(obj)


def parse_sequence(text: str | None) -> tuple[int, ...]:
    """``"1,2,3"`` or ``"[1,2,3]"`` to ``(1, 2, 3)``; empty text is the empty sequence."""
    if text is None:
        return ()
    body = text.strip().strip("[]").strip()
    if not body:
        return ()
    try:
        return tuple(int(tok) for tok in body.split(","))
    except ValueError:
        raise ValueError(f"bad sequence {text!r}: expected comma-separated integers") from None
