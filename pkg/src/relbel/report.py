"""Deterministic report emission: canonical JSON, RFC-4180 CSV, atomic writes.

Every number in an emitted file must be reproducible from config plus
seed alone, so there are no timestamps, no environment echoes, and floats
are rendered with 17 significant digits (full round-trip precision) by a
single formatter shared between JSON and CSV.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
import tempfile
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

from .errors import ValidationError

SCHEMA_FILE = "report_schema.json"


def fmt_float(value: float) -> str:
    """17-significant-digit rendering; NaN and infinities have no JSON form."""
    if isinstance(value, bool):
        raise ValidationError("fmt_float: booleans are not numbers")
    if math.isnan(value) or math.isinf(value):
        raise ValidationError("fmt_float: non-finite values must be mapped to null upstream")
    return format(float(value), ".17g")


def _dump(obj, out: list[str], indent: int) -> None:
    pad = "  " * indent
    if obj is None:
        out.append("null")
    elif obj is True or obj is False:
        out.append("true" if obj else "false")
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        if math.isnan(obj) or math.isinf(obj):
            out.append("null")
        else:
            out.append(fmt_float(obj))
    elif isinstance(obj, str):
        out.append(json.dumps(obj, ensure_ascii=False))
    elif isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{\n")
        for i, (key, value) in enumerate(obj.items()):
            if not isinstance(key, str):
                raise ValidationError(f"report keys must be strings, got {key!r}")
            out.append(f"{pad}  {json.dumps(key, ensure_ascii=False)}: ")
            _dump(value, out, indent + 1)
            out.append(",\n" if i + 1 < len(obj) else "\n")
        out.append(pad + "}")
    elif isinstance(obj, (list, tuple)):
        if not obj:
            out.append("[]")
            return
        out.append("[\n")
        for i, value in enumerate(obj):
            out.append(pad + "  ")
            _dump(value, out, indent + 1)
            out.append(",\n" if i + 1 < len(obj) else "\n")
        out.append(pad + "]")
    else:
        raise ValidationError(f"cannot serialize {type(obj).__name__} into a report")


def dumps_canonical(obj) -> str:
    out: list[str] = []
    _dump(obj, out, 0)
    out.append("\n")
    return "".join(out)


def atomic_write_text(path: Path | str, text: str) -> None:
    """Write via a temp file in the same directory, then rename into place."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def csv_text(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    """RFC-4180 CSV with a mandatory header, UTF-8, LF line endings."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(list(header))
    for row in rows:
        rendered = []
        for value in row:
            if value is None:
                rendered.append("")
            elif isinstance(value, bool):
                rendered.append("true" if value else "false")
            elif isinstance(value, float):
                rendered.append("" if (math.isnan(value) or math.isinf(value)) else fmt_float(value))
            else:
                rendered.append(str(value))
        writer.writerow(rendered)
    return buffer.getvalue()


def write_csv(path: Path | str, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    atomic_write_text(path, csv_text(header, rows))


def write_json(path: Path | str, obj) -> None:
    atomic_write_text(path, dumps_canonical(obj))


# ---------------------------------------------------------------------------
# schema validation (structural, no external dependency)
# ---------------------------------------------------------------------------


def load_schema() -> dict:
    with resources.files("relbel").joinpath(SCHEMA_FILE).open("r", encoding="utf-8") as handle:
        return json.load(handle)


_TYPES = {
    "object": dict,
    "array": list,
    "string": str,
    "boolean": bool,
    "null": type(None),
}


def _check(obj, schema: dict, path: str) -> None:
    expected = schema.get("type")
    if expected is not None:
        allowed = expected if isinstance(expected, list) else [expected]
        ok = False
        for name in allowed:
            if name == "number":
                ok = ok or (isinstance(obj, (int, float)) and not isinstance(obj, bool))
            elif name == "integer":
                ok = ok or (isinstance(obj, int) and not isinstance(obj, bool))
            else:
                ok = ok or isinstance(obj, _TYPES[name])
        if not ok:
            raise ValidationError(f"schema: {path} has type {type(obj).__name__}, expected {allowed}")
    if isinstance(obj, dict):
        for key in schema.get("required", []):
            if key not in obj:
                raise ValidationError(f"schema: {path} is missing required key {key!r}")
        for key, sub in schema.get("properties", {}).items():
            if key in obj:
                _check(obj[key], sub, f"{path}.{key}")
    if isinstance(obj, list) and "items" in schema:
        for i, item in enumerate(obj):
            _check(item, schema["items"], f"{path}[{i}]")


def validate_report(report: dict) -> None:
    """Check an analysis report against the shipped schema; raises on mismatch."""
    _check(report, load_schema(), "report")
