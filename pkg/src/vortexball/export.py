"""Byte-stable CSV / JSON emission.

Floats are always written as ``%.16e`` (17 significant digits, lowercase e),
so identical inputs give identical bytes across runs and platforms.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Sequence

import numpy as np


def fmt_float(x: float) -> str:
    return f"{float(x):.16e}"


@dataclass
class Table:
    name: str
    columns: list[str]
    rows: list[Sequence[Any]] = field(default_factory=list)

    def add(self, *row):
        if len(row) != len(self.columns):
            raise ValueError(f"row has {len(row)} cells, table {self.name!r} has {len(self.columns)}")
        self.rows.append(row)


def _cell(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return fmt_float(v)
    return str(v)


def to_csv(table: Table) -> str:
    lines = [",".join(table.columns)]
    lines.extend(",".join(_cell(v) for v in row) for row in table.rows)
    return "\n".join(lines) + "\n"


def _json(obj, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        # strict JSON has no NaN or infinity
        return fmt_float(obj) if math.isfinite(obj) else json.dumps(str(float(obj)))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_json(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        seq = list(obj)
        if not seq:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple, np.ndarray)) for v in seq):
            return "[" + ", ".join(_json(v, indent, level + 1) for v in seq) + "]"
        return "[\n" + ",\n".join(pad + _json(v, indent, level + 1) for v in seq) + "\n" + end + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj, indent: int = 2) -> str:
    return _json(obj, indent, 0) + "\n"


def document(meta: dict, tables: list[Table], summary: dict | None = None) -> dict:
    data: dict[str, Any] = {t.name: {"columns": t.columns, "rows": t.rows} for t in tables}
    if summary is not None:
        data["summary"] = summary
    return {"meta": meta, "data": data}


def write_outputs(
    out_dir: str | Path | None,
    fmt: str,
    command: str,
    meta: dict,
    tables: list[Table],
    summary: dict | None = None,
    stream=None,
) -> list[Path]:
    """Write tables as ``<name>.csv`` plus ``meta.json``, or one ``<command>.json``.

    With no ``out_dir`` everything goes to ``stream`` instead.
    """
    written: list[Path] = []
    if out_dir is None:
        if fmt == "json":
            stream.write(dumps(document(meta, tables, summary)))
        else:
            for k, t in enumerate(tables):
                if k:
                    stream.write("\n")
                stream.write(f"# {t.name}\n")
                stream.write(to_csv(t))
        return written
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    if fmt == "json":
        path = out / f"{command}.json"
        path.write_text(dumps(document(meta, tables, summary)), newline="\n")
        written.append(path)
        return written
    for t in tables:
        path = out / f"{t.name}.csv"
        path.write_text(to_csv(t), newline="\n")
        written.append(path)
    sidecar = dict(meta)
    if summary is not None:
        sidecar["summary"] = summary
    path = out / "meta.json"
    path.write_text(dumps(sidecar), newline="\n")
    written.append(path)
    return written
