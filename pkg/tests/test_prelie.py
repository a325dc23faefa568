import itertools

import numpy as np
import pytest

from ybx.errors import NotAbelian, NotPreLieBrace
from ybx.finset import (
    OpTable,
    bijective_heap_endomorphisms,
    cyclic_group,
    mod_affine,
    quaternion_group,
    symmetric_group,
)
from ybx.prelie import lie_ring_at, prelie_difference, verify_prelie
from ybx.shelf import affine_shelf
from ybx.ybalg import bullet_affine


def upper_triangular_f2():
    """Ring of upper triangular 2x2 matrices over F2, element (x, y, z) ↦ 4x + 2y + z for [[x, y], [0, z]]."""
    def dec(i):
        return (i >> 2) & 1, (i >> 1) & 1, i & 1

    def enc(x, y, z):
        return 4 * (x % 2) + 2 * (y % 2) + (z % 2)

    add = OpTable.from_function(8, lambda i, j: enc(*(p + q for p, q in zip(dec(i), dec(j)))))

    def mul(i, j):
        x1, y1, z1 = dec(i)
        x2, y2, z2 = dec(j)
        return enc(x1 * x2, x1 * y2 + y1 * z2, z1 * z2)

    return add, OpTable.from_function(8, mul)


def test_z5_bullets():
    g, f = cyclic_group(5), mod_affine(5, 2)
    bs = bullet_affine(g, f, "s")
    flags = verify_prelie(g, bs)
    assert flags.distr and flags.prelie and flags.prelie_op
    assert flags.left_invertible.identity == 0
    assert flags.left_invertible.inverse.table.tolist() == [2 * b % 5 for b in range(5)]


def test_z5_prelie_difference_formula():
    g, f = cyclic_group(5), mod_affine(5, 2)
    d = prelie_difference(g, bullet_affine(g, f, "s"))
    for a, b, c in itertools.product(range(5), repeat=3):
        assert d[a, b, c] == (f(f(a)) - f(0) - f(a)) % 5


def test_shifted_bullet_left_identity():
    g, f = cyclic_group(5), mod_affine(5, 2)
    h = 1
    m = bullet_affine(g, f, "s", shift=(h, 0))
    li = verify_prelie(g, m).left_invertible
    finv = f.inverse()
    assert li.identity == finv((-h) % 5) == 2
    e = li.identity
    assert li.inverse.table.tolist() == [finv((-h + e - b) % 5) for b in range(5)]


def test_ring_is_prelie_and_bracket_is_commutator():
    add, mul = upper_triangular_f2()
    flags = verify_prelie(add, mul)
    assert flags.distr and flags.prelie
    lie = lie_ring_at(add, mul, 0)
    assert lie.report.lie_ring
    for a, b in itertools.product(range(8), repeat=2):
        assert lie.bracket(a, b) == add(mul(a, b), mul(b, a))  # char 2: ab - ba = ab + ba
    assert lie.report.constant is None


@pytest.mark.parametrize("o", range(8))
def test_ring_lie_axioms_at_every_base_point(o):
    add, mul = upper_triangular_f2()
    assert lie_ring_at(add, mul, o).report.lie_ring


@pytest.mark.parametrize("o", range(5))
def test_zero_bracket_on_z5(o):
    g, f = cyclic_group(5), mod_affine(5, 2)
    br = bullet_affine(g, f, "r")  # b + f(a), equal to f(a) + b here
    lie = lie_ring_at(g, br, o)
    assert lie.report.lie_ring and lie.report.zero_bracket
    assert lie.report.constant == o


def test_lie_ring_refusals():
    g = symmetric_group(3)
    with pytest.raises(NotAbelian):
        lie_ring_at(g, g.op, 0)
    z = cyclic_group(4)
    with pytest.raises(NotPreLieBrace):
        lie_ring_at(z, OpTable.from_function(4, lambda a, b: (a * a + b) % 4), 0)


@pytest.mark.parametrize("group", [cyclic_group(4), cyclic_group(5), symmetric_group(3), quaternion_group()],
                         ids=["z4", "z5", "s3", "q8"])
def test_bijective_heap_endomorphisms_give_left_invertible_prelie_braces(group):
    g = group
    gop = g.opposite()
    for f in bijective_heap_endomorphisms(g):
        bs = bullet_affine(g, f, "s")
        br = bullet_affine(g, f, "r")
        fs = verify_prelie(g, bs)
        fr = verify_prelie(gop, br)
        assert fs.right_prelie_skew_brace and fs.left_invertible is not None
        assert fr.right_prelie_skew_brace and fr.left_invertible is not None
        e = fs.left_invertible.identity
        assert e == f.inverse()(g.zero)
        # b ▷ a = (b⁻¹ • a) • b for the matching shelf
        shelf = affine_shelf(g, f, "s").table
        inv = fs.left_invertible.inverse
        for a, b in itertools.product(range(g.n), repeat=2):
            assert shelf(b, a) == bs(bs(inv(b), a), b)


def test_verify_prelie_rejects_mismatched_carriers():
    with pytest.raises(ValueError):
        verify_prelie(cyclic_group(3), OpTable(np.zeros((4, 4), dtype=int)))
