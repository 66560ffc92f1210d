import pytest

from simdual.finite import (BudgetExceeded, FiniteGroupError, build_group,
                            conjugacy_classes, verify_class_inversion)
from simdual.matrices import parse_matrix


def test_pinned_orders_and_class_counts():
    table = build_group("sp", 2, 3)
    assert table.order == 24
    assert conjugacy_classes(table).num_classes == 7

    table = build_group("gsp", 2, 3)
    assert table.order == 48
    assert conjugacy_classes(table).num_classes == 8

    table = build_group("u", 2, 3)
    assert table.order == 96

    table = build_group("gl", 2, 3)
    assert table.order == 48
    assert conjugacy_classes(table).num_classes == 8


def test_gu_order_counts_multiplier_image():
    # |GU| = |image of mu| * |U|; mu lands in F_3^x, of order 2
    table = build_group("gu", 2, 3)
    assert table.order == 192
    mus = {(e.mu.a, e.mu.b) for e in table.elements}
    assert len(mus) == 2


def test_orthogonal_families():
    assert build_group("o+", 2, 3).order == 4
    assert build_group("o-", 2, 3).order == 8
    with pytest.raises(FiniteGroupError):
        build_group("o+", 3, 3)


def test_iota_is_involutive_automorphism():
    table = build_group("sp", 2, 3)
    n = table.order
    assert sorted(table.iota) == list(range(n))
    for i in range(n):
        assert table.iota[table.iota[i]] == i
    els = table.elements
    for i in range(0, n, 5):
        for j in range(0, n, 7):
            prod = els[i] * els[j]
            lhs = table.iota[table.position(prod.mat)]
            rhs = els[table.iota[i]] * els[table.iota[j]]
            assert els[lhs].mat == rhs.mat


def test_class_inversion_reports():
    for family, n, q, classes in (("sp", 2, 3, 7), ("gsp", 2, 3, 8),
                                  ("u", 2, 3, 16), ("gl", 2, 3, 8),
                                  ("o-", 2, 3, 5)):
        table = build_group(family, n, q)
        cm = conjugacy_classes(table)
        assert cm.num_classes == classes
        rep = verify_class_inversion(table, cm)
        assert rep.passed
        assert rep.permutations_equal
        ring = table.space.ring
        for row in rep.rows:
            assert row.status == "pass"
            assert row.iota_class == row.inverse_class
            # the conjugator witness satisfies its defining equations
            a = parse_matrix(ring, row.rep)
            h = parse_matrix(ring, row.conjugator)
            pos = table.position(a)
            hpos = table.position(h)
            assert table.iota[hpos] == table.inverse[hpos]   # theta(h) = h
            theta_a = table.elements[table.inverse[table.iota[pos]]]
            assert h * a * table.elements[table.inverse[hpos]].mat \
                == theta_a.mat
        assert sum(r.size for r in rep.rows) == table.order


def test_class_sizes_divide_order():
    table = build_group("sp", 2, 5)
    assert table.order == 120
    cm = conjugacy_classes(table)
    assert cm.num_classes == 9
    rep = verify_class_inversion(table, cm)
    assert rep.passed
    for row in rep.rows:
        assert table.order % row.size == 0


def test_budget_guard():
    with pytest.raises(BudgetExceeded):
        build_group("gl", 3, 5, scan_budget=10**6)


def test_unknown_family():
    with pytest.raises(FiniteGroupError):
        build_group("nope", 2, 3)
