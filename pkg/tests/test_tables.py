from fractions import Fraction

import pytest

from lgms.tables import HALF, BigradedTable, table_sum


def t(d):
    return BigradedTable(d)


def test_basic():
    a = t({(0, 0): 1, (1, 1): 20})
    assert a[1, 1] == 20 and a[2, 2] == 0
    assert a.total == 21 and len(a) == 2
    assert not BigradedTable()
    with pytest.raises(ValueError):
        a.add(0, 0, -1)
    a.add(0, 0, 0)
    assert a.total == 21


def test_shift_flip_dual():
    a = t({(0, 0): 1, (2, 0): 3})
    assert a.shift(HALF) == t({(HALF, HALF): 1, (Fraction(5, 2), HALF): 3})
    assert a.shift(1, -1) == t({(1, -1): 1, (3, -1): 3})
    assert a.flip(2) == t({(2, 0): 1, (0, 0): 3})
    assert a.dual(2) == t({(2, 2): 1, (0, 2): 3})
    assert a.transpose() == t({(0, 0): 1, (0, 2): 3})


def test_convolve():
    e = t({(0, 0): 1, (1, 0): 1, (0, 1): 1, (1, 1): 1})
    ee = e.convolve(e)
    assert ee[1, 1] == 4 and ee[2, 2] == 1 and ee.total == 16


def test_predicates():
    assert t({(0, 0): 1}).is_integral()
    h = t({(HALF, HALF): 2})
    assert h.is_half_integral() and not h.is_integral()
    assert not t({(HALF, 0): 1}).is_half_integral()
    assert t({(1, 0): 2, (0, 1): 2}).has_hodge_symmetry()
    assert not t({(1, 0): 2}).has_hodge_symmetry()


def test_first_difference_and_row():
    a = t({(0, 0): 1, (1, 1): 2})
    b = t({(0, 0): 1, (1, 1): 3})
    assert a.first_difference(a) is None
    assert a.first_difference(b) == ((1, 1), 2, 3)
    c = t({(2, 0): 1, (1, 1): 20, (0, 2): 1})
    assert c.row(2) == [1, 20, 1]


def test_json_round_trip():
    a = t({(0, 0): 1, (HALF, Fraction(3, 2)): 7})
    assert BigradedTable.from_json(a.to_json()) == a
    assert a.to_json()[1] == {"p": "1/2", "q": "3/2", "dim": 7}


def test_sum():
    a, b = t({(0, 0): 1}), t({(0, 0): 2, (1, 1): 1})
    assert table_sum([a, b]) == a + b == t({(0, 0): 3, (1, 1): 1})
