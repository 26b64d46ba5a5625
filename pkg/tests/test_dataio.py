import pytest

from attrlimits.dataio import DataError, parse_records, read_dataset
from pathlib import Path

DATA = Path(__file__).parent / "data"


def test_lf_and_crlf_agree():
    a = read_dataset(DATA / "subgroups.csv")
    b = read_dataset(DATA / "subgroups_crlf.csv")
    assert a == b
    assert len(a) == 12
    assert a.records[7].subgroup == "w08" and a.records[7].count == 19 and a.records[7].size == 80


def test_bom_and_blank_lines():
    ds = parse_records("﻿subgroup,count,size\n\na,1,2\n\n".lstrip("﻿"))
    assert len(ds) == 1


@pytest.mark.parametrize(
    "text,line,msg",
    [
        ("subgroup,count,size\na,1,10\nb,x,10\n", 3, "count must be an integer"),
        ("subgroup,count,size\na,1,0\n", 2, "size must be >= 1"),
        ("subgroup,count,size\na,-1,4\n", 2, "count must be >= 0"),
        ("subgroup,count,size\na,1\n", 2, "expected 3 fields"),
        ("subgroup,count,size\n,1,3\n", 2, "subgroup id is empty"),
        ("group,count,size\na,1,3\n", 1, "header"),
    ],
)
def test_errors_carry_line_numbers(text, line, msg):
    with pytest.raises(DataError, match=msg) as info:
        parse_records(text)
    assert info.value.line == line
    assert str(info.value).startswith(f"line {line}:")


def test_header_only():
    with pytest.raises(DataError, match="no records"):
        read_dataset(DATA / "header_only.csv")
