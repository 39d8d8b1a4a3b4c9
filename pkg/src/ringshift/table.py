"""Rectangular, unit-annotated tables and their CSV/JSON serialization."""

from __future__ import annotations

import csv
import io
import json
import math
import os
import tempfile
from dataclasses import dataclass, field

import numpy as np

__all__ = ["Column", "ScanTable", "write_atomic"]


@dataclass(frozen=True)
class Column:
    name: str
    unit: str = ""

    @property
    def header(self) -> str:
        return f"{self.name}[{self.unit}]" if self.unit else self.name

    @classmethod
    def parse(cls, header: str) -> "Column":
        if header.endswith("]") and "[" in header:
            name, unit = header[:-1].split("[", 1)
            return cls(name, unit)
        return cls(header)


def _format_value(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _parse_value(text: str):
    if text in ("true", "false"):
        return text == "true"
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        return text


@dataclass
class ScanTable:
    """Column-annotated rows.

    Physical columns carry a unit string; integer labels such as quantum
    numbers use the unit ``"1"`` and free-text columns an empty unit.
    Floats are written with ``repr`` so a CSV round trip is bit-exact.
    """

    columns: list[Column]
    rows: list[tuple] = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        for row in self.rows:
            self._check(row)

    def _check(self, row):
        if len(row) != len(self.columns):
            raise ValueError(
                f"row has {len(row)} entries, table has {len(self.columns)} columns"
            )

    def append(self, row) -> None:
        row = tuple(row)
        self._check(row)
        self.rows.append(row)

    @property
    def names(self) -> list[str]:
        return [c.name for c in self.columns]

    def column(self, name: str) -> list:
        i = self.names.index(name)
        return [row[i] for row in self.rows]

    def __len__(self):
        return len(self.rows)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow([c.header for c in self.columns])
        for row in self.rows:
            writer.writerow([_format_value(v) for v in row])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "ScanTable":
        reader = csv.reader(io.StringIO(text))
        header = next(reader)
        columns = [Column.parse(h) for h in header]
        rows = [tuple(_parse_value(v) for v in r) for r in reader if r]
        return cls(columns, rows)

    def to_json(self) -> str:
        payload = {
            "columns": [{"name": c.name, "unit": c.unit} for c in self.columns],
            "rows": [list(row) for row in self.rows],
            "meta": self.meta,
        }
        return _dumps(payload) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "ScanTable":
        payload = json.loads(text)
        columns = [Column(c["name"], c["unit"]) for c in payload["columns"]]
        return cls(columns, [tuple(r) for r in payload["rows"]], payload.get("meta", {}))

    def dumps(self, fmt: str) -> str:
        if fmt == "csv":
            return self.to_csv()
        if fmt == "json":
            return self.to_json()
        raise ValueError(f"unknown format {fmt!r}")


def _dumps(obj) -> str:
    # shortest round-trip repr, which is always valid JSON for finite floats
    if isinstance(obj, float):
        if not math.isfinite(obj):
            return "null"
        return repr(float(obj))
    if isinstance(obj, dict):
        items = (f"{json.dumps(str(k))}: {_dumps(v)}" for k, v in obj.items())
        return "{" + ", ".join(items) + "}"
    if isinstance(obj, np.integer):
        return str(int(obj))
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_dumps(v) for v in obj) + "]"
    return json.dumps(obj)


def write_atomic(path: str | os.PathLike, text: str) -> None:
    """Write ``text`` to ``path`` via a temporary file and rename."""
    path = os.fspath(path)
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".ringshift-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
