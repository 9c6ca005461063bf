"""JSON documents for POVMs and tables, and deterministic number formatting."""

from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path
from typing import Any, Iterable, Sequence

import numpy as np

from .errors import PovmRangeError
from .povm import DEFAULT_TOL, Effect, Povm, effect_from_matrix, validate_povm

SIGNIFICANT_DIGITS = 12


class DocumentError(PovmRangeError):
    pass


def _read_json(path: str | Path) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise DocumentError(f"cannot read {path}: {exc}") from exc


def _complex_entry(value) -> complex:
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, Sequence) and len(value) == 2:
        return complex(float(value[0]), float(value[1]))
    raise DocumentError(f"matrix entry must be a number or [re, im], got {value!r}")


def effect_from_document(doc: dict, tol: float = DEFAULT_TOL) -> Effect:
    if "matrix" in doc:
        rows = doc["matrix"]
        if len(rows) != 2 or any(len(r) != 2 for r in rows):
            raise DocumentError("effect matrix must be 2x2")
        m = np.array([[_complex_entry(v) for v in row] for row in rows])
        return effect_from_matrix(m, tol)
    if "t" in doc and "s" in doc:
        if len(doc["s"]) != 3:
            raise DocumentError("Bloch vector 's' must have three entries")
        return Effect(float(doc["t"]), tuple(float(x) for x in doc["s"]))
    raise DocumentError("each effect needs either 'matrix' or both 't' and 's'")


def povm_from_document(doc: dict, tol: float = DEFAULT_TOL) -> Povm:
    if not isinstance(doc, dict) or "effects" not in doc:
        raise DocumentError("POVM document must be an object with an 'effects' list")
    effects = [effect_from_document(e, tol) for e in doc["effects"]]
    return validate_povm(effects, label=doc.get("label"), tol=tol)


def load_povm(path: str | Path, tol: float = DEFAULT_TOL) -> Povm:
    return povm_from_document(_read_json(path), tol)


def povm_to_document(p: Povm) -> dict:
    """Bloch-form document at full precision so files round-trip losslessly."""
    return {
        "label": p.label or "",
        "effects": [{"t": _clean(e.t), "s": [_clean(x) for x in e.s]} for e in p.effects],
    }


def load_rows(path: str | Path, keys: Iterable[str] = ("rows",)) -> np.ndarray:
    doc = _read_json(path)
    for key in keys:
        if isinstance(doc, dict) and key in doc:
            try:
                return np.atleast_2d(np.array(doc[key], dtype=float))
            except (TypeError, ValueError) as exc:
                raise DocumentError(f"{path}: '{key}' is not a numeric matrix") from exc
    raise DocumentError(f"{path}: expected an object with one of the keys {list(keys)}")


def _clean(x: float) -> float:
    x = float(x)
    if not math.isfinite(x):
        raise DocumentError(f"refusing to emit non-finite number {x!r}")
    return 0.0 if x == 0.0 else x


def round_sig(x: float, digits: int = SIGNIFICANT_DIGITS) -> float:
    x = _clean(x)
    return _clean(float(f"{x:.{digits}g}"))


def rounded(obj: Any, digits: int = SIGNIFICANT_DIGITS) -> Any:
    """Recursively round every float in a JSON-like structure."""
    if isinstance(obj, (bool, str)) or obj is None:
        return obj
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return round_sig(float(obj), digits)
    if isinstance(obj, np.ndarray):
        return rounded(obj.tolist(), digits)
    if isinstance(obj, dict):
        return {str(k): rounded(v, digits) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [rounded(v, digits) for v in obj]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj: Any, pretty: bool = False) -> str:
    return json.dumps(rounded(obj), indent=2 if pretty else None, allow_nan=False)


def csv_text(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([repr(round_sig(v)) if isinstance(v, (float, np.floating)) else v for v in row])
    return buf.getvalue()
