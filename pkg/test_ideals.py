"""
Tests for ideals, primality, the prime radical, quotients and block decompositions.
"""

import pytest

from ideals import Ideal, Side, block_decomposition, central_idempotents, enumerate_ideals, ideal_generated, \
    ideal_product, ideal_sum, is_prime, is_semiprime, minimal_primes, prime_radical, prime_witness, quotient_ring, \
    semiprime_quotient, semiprime_witness
from ring_errors import PreconditionError, RingInputError


def test_ideal_generation(z6, t2):
    assert ideal_generated(z6, [4]).ids() == [0, 2, 4]
    assert ideal_generated(t2, [2]).ids() == [0, 2]
    assert ideal_generated(t2, [4], Side.LEFT).ids() == [0, 4]
    assert ideal_generated(t2, [4]).ids() == [0, 2, 4, 6]


def test_ideal_membership_check(z6):
    with pytest.raises(RingInputError):
        Ideal(z6, 0b110, Side.TWO_SIDED)


def test_enumerate_ideals(z6, m2):
    assert [I.ids() for I in enumerate_ideals(z6)] == [[0], [0, 3], [0, 2, 4], [0, 1, 2, 3, 4, 5]]
    assert len(enumerate_ideals(m2)) == 2


def test_prime_and_semiprime_witnesses(z4, z6):
    zero = Ideal(z4, 1)
    assert prime_witness(z4, zero) == (2, 2)
    assert semiprime_witness(z4, zero) == 2
    assert not is_semiprime(z4, zero)
    assert is_prime(z6, Ideal(z6, 0b1001))
    with pytest.raises(PreconditionError):
        is_prime(z6, Ideal(z6, 0b111111))


def test_minimal_primes(z6, t2):
    assert [P.ids() for P in minimal_primes(z6)] == [[0, 3], [0, 2, 4]]
    assert [P.ids() for P in minimal_primes(t2)] == [[0, 1, 2, 3], [0, 2, 4, 6]]


def test_prime_radical_and_powers(z4, z6, z8, t2, m2):
    data = prime_radical(z8)
    assert data.radical.ids() == [0, 2, 4, 6]
    assert data.nu == 2
    assert [P.ids() for P in data.powers[1:]] == [[0, 2, 4, 6], [0, 4], [0]]
    assert data.power(7).ids() == [0]
    assert prime_radical(z4).nu == 1
    assert prime_radical(t2).radical.ids() == [0, 2]
    assert prime_radical(z6).nu == 0
    assert prime_radical(m2).radical.ids() == [0]


def test_ideal_product(z8):
    n = prime_radical(z8).radical
    assert ideal_product(n, n).ids() == [0, 4]


def test_quotient_numbers_cosets_by_smallest_member(z6):
    Q, pi = quotient_ring(z6, Ideal(z6, 0b1001))
    assert Q.order == 3
    assert Q.one == 1
    assert pi.map.tolist() == [0, 1, 2, 0, 1, 2]
    with pytest.raises(RingInputError):
        quotient_ring(z6, Ideal(z6, 0b111111))


def test_semiprime_quotient_of_triangular(t2):
    data, Rbar, pi = semiprime_quotient(t2)
    assert Rbar.order == 4
    assert Rbar.name == "Tri(2, Zn(2))/n"
    assert pi.map.tolist() == [0, 1, 0, 1, 2, 3, 2, 3]
    assert is_semiprime(Rbar, Ideal(Rbar, 1))


def test_block_decomposition_of_z6(z6):
    blocks = block_decomposition(z6)
    assert blocks.idempotents == [3, 4]
    assert [B.order for B in blocks.blocks] == [2, 3]
    assert blocks.projections[1].map.tolist() == [0, 2, 1, 0, 2, 1]


def test_block_decomposition_of_triangular_quotient(t2, m2):
    _, Rbar, _ = semiprime_quotient(t2)
    blocks = block_decomposition(Rbar)
    assert blocks.s == 2
    assert blocks.idempotents == [1, 2]
    assert block_decomposition(m2).s == 1


def test_block_decomposition_needs_semiprime(z4):
    with pytest.raises(PreconditionError) as info:
        block_decomposition(z4)
    assert info.value.witness == (2,)


def test_ideal_sum(z6):
    total = ideal_sum(ideal_generated(z6, [2]), ideal_generated(z6, [3]))
    assert total.ids() == [0, 1, 2, 3, 4, 5]
    assert total.is_proper() is False


def test_central_idempotents(z6, t2):
    assert central_idempotents(z6) == [0, 1, 3, 4]
    assert central_idempotents(t2) == [0, 5]
