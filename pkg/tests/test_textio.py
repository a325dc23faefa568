import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ybx.catalog import CATALOG, catalog, u8_solution
from ybx.errors import ParseError
from ybx.textio import canonical, document, parse, serialize

SIMPLE = """ybx v1
n 2
table shelf
0 0
1 1
map f
1 0
"""


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_catalog_round_trip(name):
    doc = catalog(name)
    text = serialize(doc)
    assert parse(text) == doc
    assert serialize(parse(text)) == text


def test_parse_simple():
    doc = parse(SIMPLE)
    assert doc.n == 2
    assert doc.op("shelf").table.tolist() == [[0, 0], [1, 1]]
    assert doc.endomap("f").table.tolist() == [1, 0]
    assert doc.op("missing") is None and doc.solution() is None


def test_solution_shorthand():
    s = u8_solution()
    rows = [" ".join(map(str, r)) for r in np.vstack([s.sigma, s.tau])]
    doc = parse("ybx v1\nn 4\nsolution\n" + "\n".join(rows) + "\n")
    assert doc.solution() == s
    assert set(doc.tables) == {"sigma", "tau"}


def test_comments_and_blank_lines():
    text = "# leading\nybx v1\n\nn 2   # size\ntable shelf\n0 0 # row 0\n\n1 1\nmap f\n1 0\n"
    assert parse(text) == parse(SIMPLE)
    assert canonical(text) == SIMPLE.encode()


def test_canonical_whitespace():
    messy = "ybx   v1\nn 2\ntable  shelf\n  0    0\n1\t1\nmap f\n 1 0 \n"
    assert canonical(messy) == SIMPLE.encode()


def error_at(text):
    with pytest.raises(ParseError) as exc:
        parse(text)
    return exc.value


def test_truncated_file_reports_next_line():
    text = "ybx v1\nn 3\ntable shelf\n0 1 2\n0 1 2\n"
    err = error_at(text)
    assert err.line == 6


def test_out_of_range_entry_has_column():
    err = error_at("ybx v1\nn 2\ntable shelf\n0 0\n1 7\n")
    assert (err.line, err.column) == (5, 3)


def test_non_integer_entry():
    err = error_at("ybx v1\nn 2\ntable shelf\n0 x\n1 1\n")
    assert (err.line, err.column) == (4, 3)


def test_row_length_errors():
    assert error_at("ybx v1\nn 2\ntable shelf\n0\n1 1\n").line == 4
    assert error_at("ybx v1\nn 2\ntable shelf\n0 1 1\n1 1\n").line == 4


def test_header_and_size_errors():
    assert error_at("ybx v2\nn 2\n").line == 1
    assert error_at("ybx v1\nsize 2\n").line == 2
    assert error_at("ybx v1\nn 0\n").line == 2
    assert error_at("").line == 1


def test_block_errors():
    dup = "ybx v1\nn 1\ntable t\n0\ntable t\n0\n"
    assert error_at(dup).line == 5
    assert error_at("ybx v1\nn 1\nmatrix t\n0\n").line == 3
    assert error_at("ybx v1\nn 1\ntable 9t\n0\n").line == 3
    assert error_at("ybx v1\nn 1\nsolution\n0\ntable sigma\n0\n").line == 5


def test_bytes_input():
    assert parse(SIMPLE.encode()) == parse(SIMPLE)
    assert error_at(b"\xff\xfe").line == 1


def test_document_builder_validates():
    with pytest.raises(ValueError):
        document(2, tables={"t": [[0, 2], [0, 1]]})
    with pytest.raises(ValueError):
        document(2, maps={"f": [0, 1, 1]})


@st.composite
def documents(draw):
    n = draw(st.integers(1, 4))
    names = draw(st.lists(st.from_regex(r"[a-z][a-z0-9_]{0,5}", fullmatch=True), max_size=3, unique=True))
    tables, maps = {}, {}
    for i, name in enumerate(names):
        if i % 2:
            maps[name] = draw(st.lists(st.integers(0, n - 1), min_size=n, max_size=n))
        else:
            tables[name] = draw(st.lists(st.lists(st.integers(0, n - 1), min_size=n, max_size=n),
                                         min_size=n, max_size=n))
    return document(n, tables=tables, maps=maps)


@given(documents())
def test_round_trip_property(doc):
    text = serialize(doc)
    assert parse(text) == doc
    assert canonical(text) == text
