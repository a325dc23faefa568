import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from ybx.errors import NotAShelf
from ybx.finset import EndoMap, OpTable, canonical_form, cyclic_group, mod_affine, symmetric_group
from ybx.shelf import (
    affine_shelf,
    classify_shelf,
    conjugation_quandle,
    derived_solution,
    enumerate_shelves,
    is_shelf_homomorphism,
    left_zero_band,
    racks_by_translations,
    right_zero_band,
    scan_shelves,
)
from ybx.solution import associated_shelf, classify_solution, verify_braid


def tables(n):
    return st.lists(st.integers(0, n - 1), min_size=n * n, max_size=n * n).map(
        lambda v: OpTable(np.array(v).reshape(n, n)))


def first_distributivity_failure(t):
    n = len(t)
    for a, b, c in itertools.product(range(n), repeat=3):
        if t[a][t[b][c]] != t[t[a][b]][t[a][c]]:
            return (a, b, c)
    return None


def test_z6_example_is_shelf_not_spindle():
    rep = classify_shelf(OpTable.from_function(6, lambda a, b: (2 * a + 2 * b) % 6))
    assert rep.shelf and not rep.spindle and not rep.rack
    assert rep.witness == (1,)


def test_z4_example_is_rack_not_quandle():
    rep = classify_shelf(OpTable.from_function(4, lambda a, b: (2 * a + b) % 4))
    assert rep.rack and not rep.quandle


def test_bands():
    assert classify_shelf(right_zero_band(3)).quandle
    rep = classify_shelf(left_zero_band(3))
    assert rep.spindle and not rep.rack


def test_derived_solutions_of_bands():
    s = derived_solution(left_zero_band(3))
    assert all(s(a, b) == (b, b) for a in range(3) for b in range(3))
    assert classify_solution(s).idempotent
    flip = derived_solution(right_zero_band(3))
    assert all(flip(a, b) == (b, a) for a in range(3) for b in range(3))
    assert classify_solution(flip).involutive


def test_derived_solution_of_z4_rack():
    s = derived_solution(OpTable.from_function(4, lambda a, b: (2 * a + b) % 4))
    c = classify_solution(s)
    assert verify_braid(s).braid and c.bijective and c.non_degenerate
    assert oracles.is_braid(s.sigma.tolist(), s.tau.tolist())


def test_derived_solution_rejects_non_shelf():
    with pytest.raises(NotAShelf):
        derived_solution(OpTable.from_function(3, lambda a, b: (a + 1) % 3))


@given(tables(3))
def test_classification_agrees_with_oracle(op):
    t = op.table.tolist()
    rep = classify_shelf(op)
    assert rep.shelf == oracles.is_shelf(t)
    assert rep.rack == oracles.is_rack(t)
    assert rep.quandle == oracles.is_quandle(t)
    assert not rep.quandle or (rep.spindle and rep.rack)
    if not rep.shelf:
        assert rep.witness == first_distributivity_failure(t)


def test_affine_quandle_on_z5_all_variants_coincide():
    g, f = cyclic_group(5), mod_affine(5, 2)
    shelves = [affine_shelf(g, f, v) for v in "trs"]
    assert shelves[0].table == shelves[1].table == shelves[2].table
    assert all(s.report.quandle for s in shelves)


def test_affine_on_s3_with_inversion():
    g = symmetric_group(3)
    iota = EndoMap(g.neg_table)
    s = affine_shelf(g, iota, "s")
    assert s.hypothesis and s.report.quandle
    t = affine_shelf(g, iota, "t")
    assert not t.report.shelf
    assert first_distributivity_failure(t.table.table.tolist()) == t.report.witness


@pytest.mark.parametrize("n,mult", [(5, 2), (5, 3), (7, 3), (8, 3), (8, 5)])
def test_affine_variants_agree_for_automorphisms_of_abelian_groups(n, mult):
    g, f = cyclic_group(n), mod_affine(n, mult)
    assert affine_shelf(g, f, "t").table == affine_shelf(g, f, "r").table == affine_shelf(g, f, "s").table


def test_conjugation_quandle():
    q = conjugation_quandle(symmetric_group(3))
    assert classify_shelf(q).quandle
    assert oracles.is_quandle(q.table.tolist())


def test_shelf_homomorphism():
    x = OpTable.from_function(4, lambda a, b: (2 * a + b) % 4)
    for vals in itertools.product(range(4), repeat=4):
        f = EndoMap(vals)
        expect = all(f(x(a, b)) == x(f(a), f(b)) for a in range(4) for b in range(4))
        assert is_shelf_homomorphism(f, x, x) == expect
    assert is_shelf_homomorphism(EndoMap([0, 0, 0]), right_zero_band(3), left_zero_band(1))
    assert not is_shelf_homomorphism(EndoMap([0, 1, 2]), right_zero_band(3), left_zero_band(2))


# ---------------------------------------------------------------------------
# census


def oracle_shelf_count(n):
    count = racks = 0
    for flat in itertools.product(range(n), repeat=n * n):
        t = [list(flat[i * n:(i + 1) * n]) for i in range(n)]
        if oracles.is_shelf(t):
            count += 1
            racks += oracles.is_rack(t)
    return count, racks


@pytest.mark.parametrize("n", [1, 2])
def test_small_census_against_oracle(n):
    count, racks = oracle_shelf_count(n)
    assert len(scan_shelves(n)) == count
    assert len(enumerate_shelves(n, racks_only=True)) == racks


def test_census_n3_frozen_and_oracle():
    found = enumerate_shelves(3)
    assert len(found) == 224
    assert oracle_shelf_count(3) == (224, 13)
    racks = enumerate_shelves(3, racks_only=True)
    assert len(racks) == 13
    # the translation encoding must agree with the table scan on racks
    assert sorted(map(canonical_form, racks)) == sorted(map(canonical_form, racks_by_translations(3)))
    assert {r.table.tobytes() for r in racks} == {r.table.tobytes() for r in racks_by_translations(3)}


def test_rack_counts_up_to_isomorphism():
    # racks of order 1..4: 1, 2, 6, 19; quandles: 1, 1, 3, 7
    for n, racks, quandles in [(1, 1, 1), (2, 2, 1), (3, 6, 3), (4, 19, 7)]:
        found = enumerate_shelves(n, racks_only=True)
        classes = {canonical_form(r) for r in found}
        assert len(classes) == racks
        assert len({canonical_form(r) for r in found if classify_shelf(r).quandle}) == quandles
    assert len(enumerate_shelves(4, racks_only=True)) == 114


def test_enumeration_outside_range_refused():
    with pytest.raises(ValueError):
        enumerate_shelves(4)


def test_rack_derived_solutions_are_non_degenerate_and_spindles_square_free():
    for r in enumerate_shelves(4, racks_only=True):
        s = derived_solution(r)
        c = classify_solution(s)
        assert c.bijective and c.non_degenerate
        if classify_shelf(r).spindle:
            assert c.square_free
    for op in enumerate_shelves(3):
        if classify_shelf(op).spindle:
            assert classify_solution(derived_solution(op)).square_free


def test_every_small_shelf_round_trips_through_its_derived_solution():
    for op in enumerate_shelves(3):
        s = derived_solution(op)
        assert verify_braid(s).braid
        assert associated_shelf(s) == op
