"""Deterministic CSV/JSON emission and small input readers."""
from __future__ import annotations

import csv
import io as _io
import json
import math
from pathlib import Path
from typing import Iterable, Mapping

import numpy as np

from .errors import ConfigError

SCHEMA_VERSION = 1


def fmt(v) -> str:
    """Round-trippable text for numbers; integers stay integers."""
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return str(v)


def _jsonable(obj):
    if isinstance(obj, Mapping):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        f = float(obj)
        return f if math.isfinite(f) else str(f)
    return obj


def csv_text(columns: Mapping[str, Iterable], metadata: Mapping[str, object] | None = None) -> str:
    """CSV with '#'-prefixed metadata lines, a header row, then data rows."""
    buf = _io.StringIO()
    for key, val in (metadata or {}).items():
        buf.write(f"# {key}: {val if isinstance(val, str) else json.dumps(_jsonable(val))}\n")
    names = list(columns)
    cols = [list(columns[n]) for n in names]
    lengths = {len(c) for c in cols}
    if len(lengths) > 1:
        raise ValueError("columns have different lengths")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(names)
    for row in zip(*cols):
        writer.writerow([fmt(v) for v in row])
    return buf.getvalue()


def rows_to_columns(rows: list[Mapping]) -> dict[str, list]:
    if not rows:
        return {}
    return {k: [r[k] for r in rows] for k in rows[0]}


def json_text(kind: str, payload: Mapping) -> str:
    doc = {"schema": f"covbound.{kind}/{SCHEMA_VERSION}"}
    doc.update(_jsonable(payload))
    return json.dumps(doc, indent=2) + "\n"


def emit(text: str, out: str | Path | None, stream) -> None:
    if out is None or str(out) == "-":
        stream.write(text)
    else:
        Path(out).write_text(text)


def read_csv_columns(path: str | Path) -> tuple[dict[str, str], dict[str, np.ndarray]]:
    """Parse a file written by :func:`csv_text` into (metadata, numeric columns)."""
    meta: dict[str, str] = {}
    lines = []
    for line in Path(path).read_text().splitlines():
        if line.startswith("#"):
            key, _, val = line[1:].partition(":")
            meta[key.strip()] = val.strip()
        elif line.strip():
            lines.append(line)
    reader = csv.reader(lines)
    header = next(reader)
    data = np.array([[float(v) for v in row] for row in reader], dtype=float)
    return meta, {name: data[:, i] for i, name in enumerate(header)}


def read_tabulated_potential(path: str | Path) -> tuple[np.ndarray, np.ndarray]:
    """Two-column (rho, V) CSV; '#' comments and a non-numeric header are skipped."""
    rho, vals = [], []
    header_seen = False
    for lineno, line in enumerate(Path(path).read_text().splitlines(), start=1):
        text = line.strip()
        if not text or text.startswith("#"):
            continue
        parts = [p.strip() for p in text.split(",")]
        try:
            nums = [float(p) for p in parts]
        except ValueError:
            if not rho and not header_seen:
                header_seen = True
                continue
            raise ConfigError(f"{path}:{lineno}: expected two numbers, got {text!r}") from None
        if len(nums) != 2:
            raise ConfigError(f"{path}:{lineno}: expected two columns, got {len(nums)}")
        rho.append(nums[0])
        vals.append(nums[1])
    if not rho:
        raise ConfigError(f"{path}: no data rows")
    return np.array(rho), np.array(vals)


def load_json(path: str | Path) -> dict:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}") from None
    if not isinstance(doc, dict):
        raise ConfigError(f"{path}: top level must be a JSON object")
    return doc


def read_orbit(path: str | Path) -> dict:
    """Orbit spec: a list of 4-tuples, or an object with 'directions' (and optional extras)."""
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    if isinstance(doc, list):
        doc = {"directions": doc}
    dirs = doc.get("directions")
    if not isinstance(dirs, list) or not dirs:
        raise ConfigError(f"{path}: field 'directions' must be a nonempty list")
    for i, d in enumerate(dirs):
        if not (isinstance(d, list) and len(d) == 4 and all(isinstance(v, (int, float)) for v in d)):
            raise ConfigError(f"{path}: directions[{i}] must be a list of four numbers")
    return doc
