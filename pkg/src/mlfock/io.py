"""JSON and CSV interchange formats.

Floats are written with 17 significant digits in lowercase scientific
notation, so identical values always produce identical bytes.
"""

from __future__ import annotations

import csv
import io
import json
import math
from fractions import Fraction
from pathlib import Path
from typing import Any

import numpy as np

from .errors import DomainError
from .hermite import HermiteExpansion
from .quaternion import QMLFockElement, Quaternion
from .transform import MLFockElement


class FormatError(DomainError):
    """Malformed interchange file."""


def format_float(v: float) -> str:
    """17 significant digits, lowercase scientific (``1.0000000000000000e+00``)."""
    v = float(v)
    # spellings accepted by json.loads
    if math.isnan(v):
        return "NaN"
    if math.isinf(v):
        return "Infinity" if v > 0 else "-Infinity"
    return format(v, ".16e")


def _encode(obj: Any, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, Fraction):
        return str(obj.numerator) if obj.denominator == 1 else json.dumps(str(obj))
    if isinstance(obj, (float, np.floating)):
        return format_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_encode(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        seq = list(obj)
        if not seq:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple, np.ndarray)) for v in seq):
            return "[" + ", ".join(_encode(v, indent, level + 1) for v in seq) + "]"
        items = [pad + _encode(v, indent, level + 1) for v in seq]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot encode {type(obj).__name__}")


def dumps(obj: Any, indent: int = 2) -> str:
    """Deterministic JSON text (key order preserved) with a trailing newline."""
    return _encode(obj, indent, 0) + "\n"


def _complex_pairs(c: np.ndarray) -> list:
    return [[float(v.real), float(v.imag)] for v in c]


def element_to_dict(f: MLFockElement) -> dict:
    return {"q": float(f.q), "coeffs": _complex_pairs(f.coeffs)}


def expansion_to_dict(phi: HermiteExpansion) -> dict:
    return {"coeffs": _complex_pairs(phi.coeffs)}


def quaternion_to_list(p: Quaternion) -> list:
    return [p.x0, p.x1, p.x2, p.x3]


def qelement_to_dict(f: QMLFockElement) -> dict:
    return {"q": float(f.q), "coeffs": [[float(v) for v in row] for row in f.coeffs]}


def _parse_pairs(raw) -> np.ndarray:
    if not isinstance(raw, list):
        raise FormatError("'coeffs' must be a list")
    out = np.zeros(len(raw), dtype=complex)
    for i, pair in enumerate(raw):
        if isinstance(pair, (int, float)) and not isinstance(pair, bool):
            out[i] = float(pair)
        elif isinstance(pair, list) and len(pair) == 2:
            out[i] = complex(float(pair[0]), float(pair[1]))
        else:
            raise FormatError(f"coefficient {i} is not [re, im]: {pair!r}")
    return out


def _load_json(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from None


def element_from_dict(d: dict) -> MLFockElement:
    if not isinstance(d, dict) or "q" not in d or "coeffs" not in d:
        raise FormatError("MLFockElement JSON needs 'q' and 'coeffs'")
    return MLFockElement(float(d["q"]), _parse_pairs(d["coeffs"]))


def expansion_from_dict(d: dict) -> HermiteExpansion:
    if not isinstance(d, dict) or "coeffs" not in d:
        raise FormatError("HermiteExpansion JSON needs 'coeffs'")
    return HermiteExpansion(_parse_pairs(d["coeffs"]))


def quaternion_from_list(v) -> Quaternion:
    if not isinstance(v, list) or len(v) != 4:
        raise FormatError(f"quaternion must be [x0, x1, x2, x3], got {v!r}")
    return Quaternion(*(float(x) for x in v))


def qelement_from_dict(d: dict) -> QMLFockElement:
    if not isinstance(d, dict) or "q" not in d or "coeffs" not in d:
        raise FormatError("QMLFockElement JSON needs 'q' and 'coeffs'")
    rows = [quaternion_from_list(r).as_array() for r in d["coeffs"]]
    return QMLFockElement(float(d["q"]), np.array(rows).reshape(-1, 4))


def read_element(path: str | Path) -> MLFockElement:
    return element_from_dict(_load_json(Path(path).read_text()))


def write_element(f: MLFockElement, path: str | Path) -> None:
    Path(path).write_text(dumps(element_to_dict(f)))


def read_expansion(path: str | Path) -> HermiteExpansion:
    return expansion_from_dict(_load_json(Path(path).read_text()))


def write_expansion(phi: HermiteExpansion, path: str | Path) -> None:
    Path(path).write_text(dumps(expansion_to_dict(phi)))


def loads(text: str) -> Any:
    return _load_json(text)


def samples_to_csv(x, values) -> str:
    """CSV with header ``x,re,im``."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["x", "re", "im"])
    for xi, v in zip(np.asarray(x, dtype=float).reshape(-1), np.asarray(values, dtype=complex).reshape(-1)):
        w.writerow([format_float(xi), format_float(v.real), format_float(v.imag)])
    return buf.getvalue()


def samples_from_csv(text: str) -> tuple[np.ndarray, np.ndarray]:
    """Parse ``x,re,im`` rows (header optional); ``im`` may be omitted."""
    xs, vals = [], []
    for lineno, row in enumerate(csv.reader(io.StringIO(text)), start=1):
        if not row or all(not c.strip() for c in row):
            continue
        if lineno == 1 and row[0].strip().lower() == "x":
            continue
        try:
            x = float(row[0])
            re = float(row[1]) if len(row) > 1 else 0.0
            im = float(row[2]) if len(row) > 2 else 0.0
        except (ValueError, IndexError):
            raise FormatError(f"line {lineno}: expected x,re,im, got {row!r}") from None
        xs.append(x)
        vals.append(complex(re, im))
    return np.array(xs), np.array(vals, dtype=complex)


def table_to_csv(rows: list[dict], columns: list[str]) -> str:
    """CSV of dict rows; ``None`` becomes an empty field, floats use :func:`format_float`."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        out = []
        for c in columns:
            v = r.get(c)
            if v is None:
                out.append("")
            elif isinstance(v, bool):
                out.append("true" if v else "false")
            elif isinstance(v, (float, np.floating)):
                out.append(format_float(v))
            else:
                out.append(str(v))
        w.writerow(out)
    return buf.getvalue()
