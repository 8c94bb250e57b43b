"""JSON-safe encoding where every rational travels as ``{"num", "den"}``."""
from __future__ import annotations

import json
from fractions import Fraction


def rational_to_record(x) -> dict:
    x = Fraction(x)
    return {"num": x.numerator, "den": x.denominator}


def rational_from_record(rec: dict) -> Fraction:
    return Fraction(rec["num"], rec["den"])


def _is_rational_record(obj) -> bool:
    return isinstance(obj, dict) and set(obj) == {"num", "den"}


def encode(obj):
    """Recursively replace Fractions by records; tuples become lists."""
    if obj is None or isinstance(obj, (bool, int, str, float)):
        return obj
    if isinstance(obj, Fraction):
        return rational_to_record(obj)
    if isinstance(obj, dict):
        return {str(k): encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [encode(v) for v in obj]
    if hasattr(obj, "to_record"):
        return obj.to_record()
    raise TypeError(f"cannot encode {type(obj).__name__}")


def decode(obj):
    """Inverse of :func:`encode` (tuples come back as lists)."""
    if _is_rational_record(obj):
        return rational_from_record(obj)
    if isinstance(obj, dict):
        return {k: decode(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [decode(v) for v in obj]
    return obj


def dumps(obj, indent: int | None = 2) -> str:
    return json.dumps(encode(obj), indent=indent, ensure_ascii=False)


def loads(text: str):
    return decode(json.loads(text))
