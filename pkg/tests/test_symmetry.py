from fractions import Fraction

import pytest

from conftest import fermat
from lgms.errors import GroupOrderError, PreconditionError
from lgms.polyspec import ExponentMatrix, weights_of
from lgms.symmetry import (DiagonalSymmetry, adjoin, age, aut_group, check_admissible,
                           dual_group, duality_diagram_check, generate, grading_element,
                           in_aut, pairing, resolve_group, sl_filter, standard_dual,
                           suspended_elements, trivial_group)

INHOMOG = ExponentMatrix.of([[4, 0, 1], [1, 0, 7], [0, 6, 0]])
F = Fraction


def test_symmetry_arithmetic():
    g = DiagonalSymmetry.of(F(5, 4), F(-1, 3))
    assert g.components == (F(1, 4), F(2, 3))
    assert g.order == 12
    assert (g + g).components == (F(1, 2), F(1, 3))
    assert (-g + g) == DiagonalSymmetry.identity(2)
    assert 4 * g == DiagonalSymmetry.of(0, F(2, 3))
    assert age(g) == F(11, 12)
    assert g.ints(12) == (3, 8)
    with pytest.raises(ValueError):
        g.ints(6)
    assert DiagonalSymmetry.of(0, F(1, 2), 0).fixed == (0, 2)


def test_generate_closure():
    g = generate(2, [(F(1, 2), 0), (0, F(1, 3))])
    assert g.order == 6 and g.modulus == 6
    assert DiagonalSymmetry.of(F(1, 2), F(2, 3)) in g
    assert DiagonalSymmetry.of(F(1, 4), 0) not in g
    assert trivial_group(3).order == 1
    with pytest.raises(ValueError):
        generate(2, [(F(1, 2),)])


def test_cap():
    with pytest.raises(GroupOrderError):
        generate(2, [(F(1, 7), 0), (0, F(1, 7))], cap=10)
    with pytest.raises(GroupOrderError):
        aut_group(fermat(3), cap=100)


def test_groups_are_canonical():
    a = generate(2, [(F(1, 2), F(1, 2)), (F(1, 2), 0)])
    b = generate(2, [(0, F(1, 2)), (F(1, 2), 0)])
    assert a == b and hash(a) == hash(b)


@pytest.mark.parametrize("matrix, aut, sl", [
    (fermat(2), 16, 4), (fermat(3), 216, 36), (INHOMOG, 162, 9),
    (ExponentMatrix.of([[3, 1], [1, 3]]), 8, 2),
])
def test_aut_and_sl_orders(matrix, aut, sl):
    a = aut_group(matrix)
    assert a.order == aut == abs(matrix.det)
    assert sl_filter(a).order == sl
    assert all(in_aut(matrix, g) for g in a)


def test_j2_is_sl_for_inhomog():
    assert resolve_group(INHOMOG, "J2") == resolve_group(INHOMOG, "SL")
    assert resolve_group(INHOMOG, "J2").order == 9


def test_grading_element():
    j = grading_element(weights_of(INHOMOG))
    assert j == DiagonalSymmetry.of(F(2, 9), F(1, 6), F(1, 9))
    assert in_aut(INHOMOG, j)
    assert age(2 * j) == 1


def test_pairing_and_errors():
    m = fermat(2)
    g = DiagonalSymmetry.of(F(1, 4), F(3, 4))
    h = DiagonalSymmetry.of(F(1, 4), F(1, 4))
    assert pairing(m, g, h) == F(0)
    assert pairing(m, DiagonalSymmetry.of(F(1, 4), 0), h) == F(1, 4)
    with pytest.raises(PreconditionError):
        pairing(m, DiagonalSymmetry.of(F(1, 3), 0), h)


def test_check_admissible():
    m = fermat(2)
    check_admissible(m, resolve_group(m, "SL"))
    with pytest.raises(PreconditionError, match="J_W"):
        check_admissible(m, trivial_group(2))
    with pytest.raises(PreconditionError, match="determinant"):
        check_admissible(m, resolve_group(m, "ALL"))


def test_dual_of_fermat_quartic_curve():
    m = fermat(2)
    assert dual_group(m, resolve_group(m, "J2")) == resolve_group(m, "SL")
    assert dual_group(m, resolve_group(m, "SL")) == resolve_group(m, "J2")


def test_standard_dual_reverses_inclusion():
    m = fermat(3)
    small, big = resolve_group(m, "J2"), resolve_group(m, "SL")
    assert small.issubset(big)
    assert standard_dual(m, big).issubset(standard_dual(m, small))
    assert standard_dual(m, trivial_group(3)) == aut_group(m.transpose())
    assert standard_dual(m, aut_group(m)).order == 1


def test_orders_multiply():
    # |G| * |G^T_std| = |Aut_W|
    for m in (fermat(3), INHOMOG):
        for g in (resolve_group(m, "J2"), resolve_group(m, "SL")):
            assert g.order * standard_dual(m, g).order == abs(m.det)


def test_suspended_elements():
    s, j, jv = suspended_elements(INHOMOG)
    assert s == DiagonalSymmetry.of(F(1, 2), 0, 0, 0)
    assert j == DiagonalSymmetry.of(0, F(2, 9), F(1, 6), F(1, 9))
    assert jv == s + j


def test_diagram_on_inhomog():
    rep = duality_diagram_check(INHOMOG, resolve_group(INHOMOG, "J2"))
    assert rep.ok
    assert len(rep.nodes) == 5 and len(rep.arrows) == 6
    assert rep.to_json()["ok"] is True


def test_adjoin_and_generators():
    m = fermat(2)
    g = adjoin(resolve_group(m, "J2"), DiagonalSymmetry.of(F(1, 4), F(3, 4)))
    assert g == resolve_group(m, "SL")
    assert generate(2, g.generator_symmetries()) == g


def test_resolve_group_unknown():
    with pytest.raises(ValueError):
        resolve_group(fermat(2), "BOTH")
