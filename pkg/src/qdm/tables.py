"""Result tables and their emission formats.

A ResultTable is a typed column/row grid plus a provenance block (scenario
hash, seed, tool version, command). Emission formats:

* json: column-array layout, compact separators; byte-deterministic for a
  fixed table, and emit -> parse -> emit is the identity.
* csv: the documented header for the table kind, floats printed with six
  significant digits, provenance as leading '#' comment lines.
* svg: only for profile/curve/threshold tables (see svgplot).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from enum import Enum
from typing import Any

__all__ = ["ResultTable", "emit", "parse_table", "PLOTTABLE_KINDS"]

PLOTTABLE_KINDS = ("oc_profile", "ppos_curve", "thresholds")

Cell = Any  # float | int | str | bool | None


@dataclass(frozen=True)
class ResultTable:
    kind: str
    columns: tuple[str, ...]
    rows: tuple[tuple, ...]
    provenance: dict

    def __post_init__(self) -> None:
        for row in self.rows:
            if len(row) != len(self.columns):
                raise ValueError(f"row width {len(row)} != column count {len(self.columns)}")

    def column(self, name: str) -> list:
        i = self.columns.index(name)
        return [row[i] for row in self.rows]


def _plain(value: Cell) -> Cell:
    """Coerce cells to JSON-native scalars."""
    if value is None or isinstance(value, (bool, str)):
        return value
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, int):
        return int(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"non-finite cell value {value}")
        return float(value)
    raise TypeError(f"unsupported cell type {type(value).__name__}")


def _emit_json(table: ResultTable) -> bytes:
    data = {name: [_plain(row[i]) for row in table.rows]
            for i, name in enumerate(table.columns)}
    obj = {
        "kind": table.kind,
        "columns": list(table.columns),
        "data": data,
        "provenance": table.provenance,
    }
    return json.dumps(obj, separators=(",", ":"), allow_nan=False, ensure_ascii=False).encode("utf-8")


def parse_table(data: bytes) -> ResultTable:
    """Inverse of the json emission."""
    obj = json.loads(data.decode("utf-8"))
    columns = tuple(obj["columns"])
    series = [obj["data"][name] for name in columns]
    rows = tuple(tuple(col[i] for col in series) for i in range(len(series[0]) if series else 0))
    return ResultTable(kind=obj["kind"], columns=columns, rows=rows,
                       provenance=obj["provenance"])


def _csv_cell(value: Cell) -> str:
    value = _plain(value)
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".6g")
    return str(value)


def _emit_csv(table: ResultTable) -> bytes:
    lines = [f"# kind: {table.kind}"]
    for key in sorted(table.provenance):
        lines.append(f"# {key}: {table.provenance[key]}")
    lines.append(",".join(table.columns))
    for row in table.rows:
        lines.append(",".join(_csv_cell(v) for v in row))
    return ("\n".join(lines) + "\n").encode("utf-8")


def emit(table: ResultTable, format: str) -> bytes:
    """Render a table as csv, json or an svg plot."""
    if format == "json":
        return _emit_json(table)
    if format == "csv":
        return _emit_csv(table)
    if format == "svg":
        if table.kind not in PLOTTABLE_KINDS:
            raise ValueError(
                f"svg output is only available for {', '.join(PLOTTABLE_KINDS)} tables, "
                f"not {table.kind!r}")
        from .svgplot import render_svg
        return render_svg(table).encode("utf-8")
    raise ValueError(f"unknown format {format!r} (expected csv, json or svg)")
