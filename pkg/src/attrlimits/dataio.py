"""Read subgroup records from the fixed ``subgroup,count,size`` CSV layout."""

from __future__ import annotations

import csv
import io
from pathlib import Path

from .charts import Dataset, Record

__all__ = ["HEADER", "DataError", "parse_records", "read_dataset"]

HEADER = ("subgroup", "count", "size")


class DataError(ValueError):
    """Malformed input; ``line`` is 1-based, counting the header as line 1."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _int_field(name: str, text: str, line: int, minimum: int) -> int:
    try:
        value = int(text.strip())
    except ValueError:
        raise DataError(f"{name} must be an integer, got {text!r}", line) from None
    if value < minimum:
        raise DataError(f"{name} must be >= {minimum}, got {value}", line)
    return value


def parse_records(text: str) -> Dataset:
    rows = csv.reader(io.StringIO(text, newline=""))
    header = next(rows, None)
    if header is None or tuple(h.strip() for h in header) != HEADER:
        raise DataError(f"header must be {','.join(HEADER)}", 1)
    records = []
    for row in rows:
        line = rows.line_num
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) != 3:
            raise DataError(f"expected 3 fields, got {len(row)}", line)
        subgroup = row[0].strip()
        if not subgroup:
            raise DataError("subgroup id is empty", line)
        count = _int_field("count", row[1], line, 0)
        size = _int_field("size", row[2], line, 1)
        records.append(Record(subgroup, count, size))
    if not records:
        raise DataError("no records")
    return Dataset(tuple(records))


def read_dataset(path: str | Path) -> Dataset:
    # utf-8-sig tolerates a leading byte-order mark from spreadsheet exports.
    with open(path, encoding="utf-8-sig", newline="") as fh:
        return parse_records(fh.read())
