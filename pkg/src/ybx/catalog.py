"""Built-in instances, returned as documents."""

from __future__ import annotations

from .brace import z4_brace
from .finset import U8_ELEMENTS, OpTable, symmetric_group
from .shelf import conjugation_quandle
from .solution import Solution
from .textio import Document, document


def u8_solution() -> Solution:
    """r(a, b) = (1 - a + ab, (1 - a + ab)⁻¹ab) on U(ℤ/8ℤ), elements ordered 1, 3, 5, 7."""
    pos = {v: i for i, v in enumerate(U8_ELEMENTS)}

    def r(i, j):
        a, b = U8_ELEMENTS[i], U8_ELEMENTS[j]
        s = (1 - a + a * b) % 8
        # every unit mod 8 is its own inverse
        return pos[s], pos[s * a * b % 8]

    return Solution.from_map(4, r)


def z6_shelf() -> OpTable:
    return OpTable.from_function(6, lambda a, b: (2 * a + 2 * b) % 6)


def z4_rack() -> OpTable:
    return OpTable.from_function(4, lambda a, b: (2 * a + b) % 4)


def dihedral3() -> OpTable:
    """Dihedral quandle a▷b = 2a - b on ℤ/3."""
    return OpTable.from_function(3, lambda a, b: (2 * a - b) % 3)


def s3_conj() -> OpTable:
    return conjugation_quandle(symmetric_group(3))


def _z4_brace_doc() -> Document:
    B = z4_brace()
    return document(4, tables={"add": B.add.op, "mul": B.mul.op})


CATALOG = {
    "z6-shelf": lambda: document(6, tables={"shelf": z6_shelf()}),
    "z4-rack": lambda: document(4, tables={"shelf": z4_rack()}),
    "u8-solution": lambda: document(4, solution=u8_solution()),
    "z4-brace": _z4_brace_doc,
    "s3-conj": lambda: document(6, tables={"shelf": s3_conj()}),
    "dihedral3": lambda: document(3, tables={"shelf": dihedral3()}),
}


def catalog(name: str) -> Document:
    try:
        return CATALOG[name]()
    except KeyError:
        raise KeyError(f"unknown catalog entry {name!r}; known: {', '.join(CATALOG)}") from None
