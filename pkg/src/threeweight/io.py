"""Code, design and table files.

Code files are JSON ``{"n", "k", "rows", "provenance"}`` where each row is a
hex string of ceil(n/4) digits with bit 0 holding coordinate 1.  All writers
are deterministic so reruns reproduce byte-identical files.
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path
from typing import Iterable, Sequence

from .codes import CodeError, LinearCode, WeightDistribution


class FileFormatError(ValueError):
    pass


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def write_json(path: Path, obj) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps(obj), encoding="utf-8")
    return path


def code_to_json(code: LinearCode) -> dict:
    digits = (code.n + 3) // 4
    return {"n": code.n, "k": code.k, "rows": [f"{r:0{digits}x}" for r in code.rows],
            "provenance": code.provenance}


def code_from_json(data: dict) -> LinearCode:
    if not isinstance(data, dict):
        raise FileFormatError("top level: expected a JSON object")
    for key in ("n", "k", "rows"):
        if key not in data:
            raise FileFormatError(f"field '{key}': missing")
    n, k, rows = data["n"], data["k"], data["rows"]
    if not isinstance(n, int) or n <= 0:
        raise FileFormatError(f"field 'n': expected a positive integer, got {n!r}")
    if not isinstance(k, int) or k <= 0:
        raise FileFormatError(f"field 'k': expected a positive integer, got {k!r}")
    if not isinstance(rows, list) or len(rows) != k:
        raise FileFormatError(f"field 'rows': expected a list of {k} hex strings")
    parsed = []
    for i, r in enumerate(rows):
        try:
            parsed.append(int(r, 16))
        except (TypeError, ValueError):
            raise FileFormatError(f"field 'rows[{i}]': not a hex string: {r!r}") from None
    try:
        return LinearCode(n, parsed, data.get("provenance") or {})
    except CodeError as exc:
        raise FileFormatError(f"field 'rows': {exc}") from None


def write_code(path: Path, code: LinearCode) -> Path:
    return write_json(path, code_to_json(code))


def read_code(path: Path) -> LinearCode:
    text = Path(path).read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    try:
        return code_from_json(data)
    except FileFormatError as exc:
        raise FileFormatError(f"{path}: {exc}") from None


def distribution_csv(dist: WeightDistribution) -> str:
    return rows_to_csv([{"weight": w, "count": c} for w, c in enumerate(dist.counts) if c],
                       ["weight", "count"])


def rows_to_csv(rows: Iterable[dict], columns: Sequence[str]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(columns), lineterminator="\n",
                            extrasaction="ignore")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()


def rows_to_markdown(rows: Sequence[dict], columns: Sequence[str]) -> str:
    lines = ["| " + " | ".join(columns) + " |", "|" + "---|" * len(columns)]
    for row in rows:
        lines.append("| " + " | ".join(str(row.get(c, "")) for c in columns) + " |")
    return "\n".join(lines) + "\n"


def write_text(path: Path, text: str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    return path
