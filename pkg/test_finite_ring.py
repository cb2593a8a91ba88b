"""
Tests for FiniteRing, table validation, element sets and ring homomorphisms.
"""

import numpy as np
import pytest

from element_set import ElementSet, MultSet, ZeroAbsorbed
from finite_ring import FiniteRing, hom_check, regular_elements, units, validate_ring
from ring_builder import construct
from ring_errors import InvariantViolation, OrderOverflowError, RingInputError, RingValidationError
from ring_hom import RingHom

Z2_ADD = [[0, 1], [1, 0]]


def test_cyclic_ring_basics(z4, z8):
    assert z4.order == 4
    assert z4.one == 1
    assert z4.characteristic() == 4
    assert z4.is_commutative()
    assert z4.sub(1, 3) == 2
    assert z8.power(2, 3) == 0
    assert z8.power(3, 2) == 1


def test_units_and_regular_elements(z6, t2, m2):
    assert units(z6).ids() == [1, 5]
    assert regular_elements(z6).ids() == [1, 5]
    assert units(t2).ids() == [5, 7]
    assert regular_elements(m2).ids() == [6, 7, 9, 11, 13, 14]


def test_validation_reports_missing_identity():
    report = validate_ring(Z2_ADD, [[0, 0], [0, 0]], 1)
    assert not report.ok
    assert report.violations == [("mul_identity", (1,))]


def test_validation_passes_on_z2():
    assert validate_ring(Z2_ADD, [[0, 0], [0, 1]], 1).ok


def test_constructor_raises_on_broken_axiom():
    with pytest.raises(RingValidationError) as info:
        FiniteRing(Z2_ADD, [[0, 0], [0, 0]], 1)
    assert info.value.report.violations[0][0] == "mul_identity"


def test_malformed_tables_are_rejected():
    with pytest.raises(RingInputError):
        validate_ring([[0]], [[0]], 0)
    with pytest.raises(RingInputError):
        validate_ring([[0, 1], [1, 2]], [[0, 0], [0, 1]], 1)
    with pytest.raises(RingInputError):
        validate_ring([[0, 1, 0], [1, 0, 1]], [[0, 0], [0, 1]], 1)
    with pytest.raises(OrderOverflowError):
        validate_ring(np.zeros((5, 5), dtype=int), np.zeros((5, 5), dtype=int), 1, order_cap=4)


def test_opposite_ring(z6, t2):
    assert z6.opposite() == z6
    assert t2.opposite() != t2
    assert t2.opposite().mul(2, 4) == t2.mul(4, 2)
    assert t2.opposite().name == "Op(Tri(2, Zn(2)))"


def test_tables_are_read_only(z4):
    with pytest.raises(ValueError):
        z4.mul_table[1, 1] = 0


def test_hom_check_reports_doubling_map(z4):
    report = hom_check([0, 2, 0, 2], z4, z4)
    assert report.violations == [("map(ab)=map(a)map(b)", (1, 1)), ("map(one)=one", (1,))]
    with pytest.raises(RingInputError):
        hom_check([0, 1], z4, z4)


def test_reduction_hom(z4):
    z2 = FiniteRing(Z2_ADD, [[0, 0], [0, 1]], 1, name="Z2")
    f = RingHom(z4, z2, [0, 1, 0, 1], name="mod2")
    assert f.kernel().ids() == [0, 2]
    assert f.is_surjective() and not f.is_injective()
    assert f.preimage(ElementSet.from_ids(z2, [1])).ids() == [1, 3]
    identity = RingHom.identity(z4)
    assert identity.compose(f).map.tolist() == [0, 1, 0, 1]
    with pytest.raises(InvariantViolation):
        RingHom(z4, z4, [0, 2, 0, 2])


def test_element_sets(z6):
    S = ElementSet.from_ids(z6, [3, 1])
    assert str(S) == "{1, 3}"
    assert repr(S) == "ElementSet([1, 3])"
    assert 3 in S and 2 not in S
    assert len(S) == 2
    assert ElementSet.from_ids(z6, [5]) < S
    with pytest.raises(RingInputError):
        ElementSet.from_ids(z6, [6])


def test_mult_set_requirements(z6):
    assert MultSet(z6, ElementSet.from_ids(z6, [1, 3]).bits).ids() == [1, 3]
    for ids in ([3], [0, 1], [1, 2]):
        with pytest.raises(RingInputError):
            MultSet(z6, ElementSet.from_ids(z6, ids).bits)


def test_zero_absorbed_value():
    assert repr(ZeroAbsorbed([3, 4])) == "ZeroAbsorbed(3*4 = 0)"
    assert ZeroAbsorbed([3, 4]) == ZeroAbsorbed([3, 4])


def test_validation_pins_first_witnesses(z4):
    broken = z4.mul_table.copy()
    broken[2, 2] = 1
    report = validate_ring(z4.add_table, broken, z4.one)
    assert report.violations == [("mul_associative", (2, 2, 3)), ("left_distributive", (2, 1, 1)),
                                 ("right_distributive", (2, 1, 1))]


def test_double_opposite_restores_tables(t2):
    again = construct("Op(Op(Tri(2, Zn(2))))")
    assert np.array_equal(again.add_table, t2.add_table)
    assert np.array_equal(again.mul_table, t2.mul_table)
    assert np.array_equal(t2.opposite().opposite().mul_table, t2.mul_table)


@pytest.mark.parametrize("left, right", [("Zn(4)", "Zn(6)"), ("Tri(2, Zn(2))", "Zn(3)"), ("Zn(2)", "Zn(2)")])
def test_units_of_products_are_coordinatewise(left, right):
    A, B = construct(left), construct(right)
    product = construct(f"Prod({left}, {right})")
    expected = sorted(a * B.order + b for a in units(A).ids() for b in units(B).ids())
    assert units(product).ids() == expected
