"""Line-oriented text format for finite structures.

::

    ybx v1
    n 4
    table shelf        # n rows of n integers, row a = left operand
    ...
    map f              # one row of n integers
    ...
    solution           # shorthand for `table sigma` then `table tau`
    ...

Blank lines and ``#`` comments are ignored. Every entry must lie in 0..n-1.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from .errors import ParseError
from .finset import EndoMap, OpTable
from .solution import Solution

HEADER = "ybx v1"
_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_.-]*\Z")


@dataclass
class Document:
    n: int
    tables: dict = field(default_factory=dict)  # name -> (n, n) int array
    maps: dict = field(default_factory=dict)  # name -> (n,) int array

    def __eq__(self, other):
        if not isinstance(other, Document) or self.n != other.n:
            return False
        return _same(self.tables, other.tables) and _same(self.maps, other.maps)

    def op(self, name: str) -> Optional[OpTable]:
        t = self.tables.get(name)
        return None if t is None else OpTable(t)

    def endomap(self, name: str) -> Optional[EndoMap]:
        m = self.maps.get(name)
        return None if m is None else EndoMap(m)

    def solution(self) -> Optional[Solution]:
        if "sigma" in self.tables and "tau" in self.tables:
            return Solution(self.tables["sigma"], self.tables["tau"])
        return None

    def add_table(self, name: str, table) -> "Document":
        self.tables[name] = _checked(np.asarray(table, dtype=np.int64), (self.n, self.n), self.n, name)
        return self

    def add_map(self, name: str, values) -> "Document":
        self.maps[name] = _checked(np.asarray(values, dtype=np.int64), (self.n,), self.n, name)
        return self

    def add_solution(self, s: Solution) -> "Document":
        return self.add_table("sigma", s.sigma).add_table("tau", s.tau)


def _same(x: dict, y: dict) -> bool:
    return x.keys() == y.keys() and all(np.array_equal(x[k], y[k]) for k in x)


def _checked(arr: np.ndarray, shape: tuple, n: int, name: str) -> np.ndarray:
    if arr.shape != shape:
        raise ValueError(f"block {name!r} has shape {arr.shape}, expected {shape}")
    if arr.size and (arr.min() < 0 or arr.max() >= n):
        raise ValueError(f"block {name!r} has entries outside 0..{n - 1}")
    return arr


def document(n: int, tables: Optional[dict] = None, maps: Optional[dict] = None,
             solution: Optional[Solution] = None) -> Document:
    doc = Document(n)
    for k, v in (tables or {}).items():
        doc.add_table(k, v.table if isinstance(v, OpTable) else v)
    for k, v in (maps or {}).items():
        doc.add_map(k, v.table if isinstance(v, EndoMap) else v)
    if solution is not None:
        doc.add_solution(solution)
    return doc


# ---------------------------------------------------------------------------
# parsing


class _Lines:
    """Significant lines with their 1-based numbers; comments stripped."""

    def __init__(self, text: str):
        raw = text.splitlines()
        self.total = len(raw)
        self.items = []
        for i, line in enumerate(raw, start=1):
            body = line.split("#", 1)[0]
            if body.strip():
                self.items.append((i, body))
        self.pos = 0

    def next(self, what: str):
        if self.pos >= len(self.items):
            raise ParseError(f"unexpected end of file, expected {what}", self.total + 1)
        item = self.items[self.pos]
        self.pos += 1
        return item

    def done(self) -> bool:
        return self.pos >= len(self.items)


def _ints(lineno: int, body: str, n: int, count: int) -> list[int]:
    out = []
    for m in re.finditer(r"\S+", body):
        tok, col = m.group(), m.start() + 1
        if not re.fullmatch(r"-?\d+", tok):
            raise ParseError(f"expected an integer, got {tok!r}", lineno, col)
        v = int(tok)
        if not 0 <= v < n:
            raise ParseError(f"entry {v} outside 0..{n - 1}", lineno, col)
        if len(out) == count:
            raise ParseError(f"too many entries, expected {count}", lineno, col)
        out.append(v)
    if len(out) != count:
        raise ParseError(f"expected {count} entries, got {len(out)}", lineno, len(body.rstrip()) + 1)
    return out


def _rows(lines: _Lines, n: int, count: int, name: str) -> np.ndarray:
    rows = []
    for i in range(count):
        lineno, body = lines.next(f"row {i} of {name!r}")
        rows.append(_ints(lineno, body, n, n))
    return np.array(rows, dtype=np.int64).reshape(count, n)


def parse(data: Union[bytes, str]) -> Document:
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"not UTF-8 text: {exc.reason}", 1) from None
    lines = _Lines(data)
    lineno, body = lines.next("header")
    if body.split() != HEADER.split():
        raise ParseError(f"expected header {HEADER!r}", lineno)
    lineno, body = lines.next("size line")
    toks = body.split()
    if len(toks) != 2 or toks[0] != "n" or not toks[1].isdigit() or int(toks[1]) < 1:
        raise ParseError("expected 'n <positive int>'", lineno)
    n = int(toks[1])
    doc = Document(n)
    seen = set()

    def claim(name, lineno):
        if name in seen:
            raise ParseError(f"duplicate block {name!r}", lineno)
        seen.add(name)

    while not lines.done():
        lineno, body = lines.next("block")
        toks = body.split()
        kind = toks[0]
        if kind == "solution" and len(toks) == 1:
            claim("sigma", lineno)
            claim("tau", lineno)
            doc.tables["sigma"] = _rows(lines, n, n, "sigma")
            doc.tables["tau"] = _rows(lines, n, n, "tau")
        elif kind in ("table", "map") and len(toks) == 2:
            name = toks[1]
            if not _NAME.match(name):
                raise ParseError(f"bad block name {name!r}", lineno, body.index(name) + 1)
            claim(name, lineno)
            if kind == "table":
                doc.tables[name] = _rows(lines, n, n, name)
            else:
                doc.maps[name] = _rows(lines, n, 1, name)[0]
        else:
            raise ParseError(f"expected 'table <name>', 'map <name>' or 'solution', got {body.strip()!r}",
                             lineno, len(body) - len(body.lstrip()) + 1)
    return doc


# ---------------------------------------------------------------------------
# serialization


def _row(values) -> str:
    return " ".join(str(int(v)) for v in values)


def serialize(doc: Document) -> bytes:
    out = [HEADER, f"n {doc.n}"]
    for name, t in doc.tables.items():
        out.append(f"table {name}")
        out.extend(_row(r) for r in t)
    for name, m in doc.maps.items():
        out.append(f"map {name}")
        out.append(_row(m))
    return ("\n".join(out) + "\n").encode("utf-8")


def canonical(data: Union[bytes, str]) -> bytes:
    """Whitespace-normalized form of a document."""
    return serialize(parse(data))
