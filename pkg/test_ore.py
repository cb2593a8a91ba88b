"""
Tests for multiplicative closure, the Ore and denominator conditions and localization.
"""

import pytest

from element_set import MultSet, ZeroAbsorbed
from ore import ass_ideal, is_left_denominator, is_left_ore, is_right_denominator, is_right_ore, \
    largest_regular_ore, localization_universal_check, localize, monoid_closure, product_set, saturate
from ring_errors import PreconditionError

S1C = [4, 5, 6, 7]     # a = 1
S2_PRIME = [1, 3, 5, 7]  # d = 1


def test_monoid_closure(z6, t2):
    assert monoid_closure(z6, [5]).ids() == [1, 5]
    assert monoid_closure(t2, [4, 6]).ids() == [4, 5, 6]
    assert monoid_closure(z6, [3, 4]) == ZeroAbsorbed([3, 4])


def test_left_ore_failure_on_first_row_units(t2):
    verdict = is_left_ore(t2, S1C)
    assert not verdict
    assert verdict.witness == (2, 4)
    assert verdict.condition == "ore"
    assert is_left_denominator(t2, S1C).witness == (2, 4)


def test_second_column_set_is_left_but_not_right_denominator(t2):
    assert is_left_ore(t2, S2_PRIME)
    assert is_left_denominator(t2, S2_PRIME)
    assert not is_right_ore(t2, S2_PRIME)
    assert not is_right_denominator(t2, S2_PRIME)
    assert is_right_ore(t2, S1C)


def test_ass_ideal(z6, t2):
    assert ass_ideal(z6, [1, 3]).ids() == [0, 2, 4]
    assert ass_ideal(t2, S2_PRIME).ids() == [0, 2, 4, 6]


def test_localize_z6(z6):
    result = localize(z6, [1, 4])
    assert result.localized.order == 3
    assert result.kernel.ids() == [0, 3]
    assert result.sigma.name == "sigma"
    assert result.inverted_image.ids() == [1]
    assert localize(z6, [1, 3]).localized.order == 2


def test_localize_triangular(t2):
    result = localize(t2, S2_PRIME)
    assert result.localized.order == 2
    assert result.kernel.ids() == [0, 2, 4, 6]


def test_localize_needs_denominator_set(t2):
    with pytest.raises(PreconditionError) as info:
        localize(t2, S1C)
    assert info.value.witness == (2, 4)


def test_saturation(z6, t2):
    assert saturate(z6, [1, 4]).ids() == [1, 2, 4, 5]
    assert saturate(z6, [1, 3]).ids() == [1, 3, 5]
    assert saturate(t2, [1, 5]).ids() == S2_PRIME
    again = saturate(z6, saturate(z6, [1, 4]))
    assert again.ids() == [1, 2, 4, 5]


def test_product_set(z6):
    assert product_set(z6, [1, 3], [1, 4]) == ZeroAbsorbed([3, 4])
    assert product_set(z6, [1, 5], [1, 3]).ids() == [1, 3, 5]


def test_largest_regular_ore(m2, t2):
    assert largest_regular_ore(m2).ids() == [6, 7, 9, 11, 13, 14]
    assert isinstance(largest_regular_ore(t2), MultSet)
    assert largest_regular_ore(t2).ids() == [5, 7]


def test_universal_property(z6, t2):
    assert localization_universal_check(z6, [1, 3]).ok
    assert localization_universal_check(t2, S2_PRIME).ok
