"""
Tests for the radical filtration, the associated graded ring, torsion and the Ore solver.
"""

import numpy as np
import pytest

from finite_ring import regular_elements, validate_ring
from graded import Module, brute_force_ore_pair, c_tilde, element_degree, graded_product_check, gr_ring, \
    layer_module, max_ker_check, ore_solve, radical_filtration, tor_submodule
from ideals import prime_radical
from ring_errors import PreconditionError


def test_filtration_layers(z8, t2):
    filtration = radical_filtration(z8)
    assert filtration.nu == 2
    assert [layer.size for layer in filtration.layers] == [2, 2, 2]
    assert filtration.layers[1].carrier.tolist() == [0, 2]
    assert [layer.size for layer in radical_filtration(t2).layers] == [4, 2]


def test_layer_module_range(z4):
    assert layer_module(z4, 1).size == 2
    with pytest.raises(PreconditionError):
        layer_module(z4, 2)
    with pytest.raises(PreconditionError):
        layer_module(z4, 0)


def test_element_degree(z8):
    data = prime_radical(z8)
    assert [element_degree(data, r) for r in (1, 2, 4, 6, 0)] == [0, 1, 2, 1, 3]


def test_gr_of_z4_has_characteristic_two(z4):
    G = gr_ring(z4)
    assert G.ring.order == 4
    assert G.ring.one == 2
    assert G.ring.characteristic() == 2
    assert G.degree[1] == 1
    assert G.ring.mul(1, 1) == 0
    assert validate_ring(G.ring.add_table, G.ring.mul_table, G.ring.one).ok


def test_gr_of_z8_has_cube_zero(z8):
    G = gr_ring(z8)
    assert G.ring.order == 8
    assert G.ring.mul(2, 2) == 1
    assert G.ring.power(2, 3) == 0
    assert G.components(7) == [1, 1, 1]
    assert G.homogeneous_part(7, 1) == 2
    assert G.component_mask(0).tolist() == [True, False, False, False, True, False, False, False]
    assert graded_product_check(G).ok


def test_gr_of_semiprime_ring_is_the_ring(m2):
    G = gr_ring(m2)
    assert np.array_equal(G.ring.mul_table, m2.mul_table)
    assert G.ring.one == m2.one


def test_gr_of_triangular(t2):
    G = gr_ring(t2)
    assert G.ring.order == 8
    assert not G.ring.is_commutative()
    assert graded_product_check(G).ok
    assert G.embedding.is_injective()


def test_c_tilde(z4, t2):
    assert c_tilde(z4).ids() == [1]
    assert c_tilde(t2).ids() == [3]


def test_torsion(z6, t2):
    assert tor_submodule(z6, [1, 3]) == frozenset({0, 2, 4})
    assert tor_submodule(t2, [1, 5]) == frozenset({0, 2, 4, 6})
    assert max_ker_check(z6, [1, 3]).ok
    assert max_ker_check(t2, [1, 3, 5, 7]).ok
    with pytest.raises(PreconditionError):
        max_ker_check(t2, [4, 5, 6, 7])


def test_layer_quotient_module(z8):
    filtration = radical_filtration(z8)
    module = Module.layer_quotient(z8, filtration.layers[1], 3)
    assert module.size == 1
    zero_quotient = Module.ring_quotient(z8, prime_radical(z8).radical)
    assert zero_quotient.size == 2


def test_brute_force_pair(z8):
    assert brute_force_ore_pair(z8, 3, 2) == (1, 6)


@pytest.mark.parametrize("fixture", ["z4", "z8", "t2"])
def test_ore_solve_on_every_pair(fixture, request):
    ring = request.getfixturevalue(fixture)
    regular = regular_elements(ring)
    for c in regular.ids():
        for r in range(ring.order):
            c_new, r_new = ore_solve(ring, c, r)
            assert c_new in regular
            assert ring.mul(c_new, r) == ring.mul(r_new, c)


def test_ore_solve_rejects_zero_divisor(z8):
    with pytest.raises(PreconditionError):
        ore_solve(z8, 2, 1)
