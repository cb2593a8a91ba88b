"""
Ideals of finite rings: generation, primality, the ideal census, minimal primes,
the prime radical with its powers, quotient rings and the block decomposition
of semiprime rings.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, List, Optional, Tuple, Union

import numpy as np

from element_set import ElementSet, mask_to_bits
from finite_ring import FiniteRing
from ring_errors import InvariantViolation, PreconditionError, RingInputError, RingResourceError
from ring_hom import RingHom
from settings import get_settings

logger = logging.getLogger(__name__)


class Side(Enum):
    LEFT = "left"
    RIGHT = "right"
    TWO_SIDED = "two-sided"


def _ideal_violation(R: FiniteRing, mask: np.ndarray, side: Side) -> Optional[str]:
    """Describe the first ideal axiom the mask breaks, or None."""
    if not mask[0]:
        return "does not contain zero"
    idx = np.flatnonzero(mask)
    if not mask[R.add_table[np.ix_(idx, idx)]].all():
        return "is not closed under addition"
    if side in (Side.LEFT, Side.TWO_SIDED) and not mask[R.mul_table[:, idx]].all():
        return "does not absorb multiplication from the left"
    if side in (Side.RIGHT, Side.TWO_SIDED) and not mask[R.mul_table[idx, :]].all():
        return "does not absorb multiplication from the right"
    return None


class Ideal(ElementSet):
    """An additive subgroup absorbing multiplication on the tagged side(s)."""

    def __init__(self, ring: FiniteRing, bits: int, side: Side = Side.TWO_SIDED, check: bool = True):
        super().__init__(ring, bits)
        self.side = side
        if check:
            problem = _ideal_violation(ring, self.mask(), side)
            if problem:
                raise RingInputError(f"{self} {problem}, so it is not a {side.value} ideal")

    def is_proper(self) -> bool:
        return not self.bits >> self.ring.one & 1

    def __repr__(self):
        return f"Ideal({self.ids()}, {self.side.value})"


# ==================== GENERATION ====================

def _additive_closure(R: FiniteRing, mask: np.ndarray) -> np.ndarray:
    """Smallest additive subgroup containing the masked elements."""
    members = mask.copy()
    members[0] = True
    while True:
        idx = np.flatnonzero(members)
        grown = members.copy()
        grown[R.add_table[np.ix_(idx, idx)].ravel()] = True
        if grown.sum() == members.sum():
            return members
        members = grown


def _as_ids(R: FiniteRing, gens: Union[ElementSet, Iterable[int]]) -> List[int]:
    if isinstance(gens, ElementSet):
        return gens.ids()
    return ElementSet.from_ids(R, gens).ids()


def ideal_generated(R: FiniteRing, gens: Union[ElementSet, Iterable[int]],
                    side: Side = Side.TWO_SIDED) -> Ideal:
    """
    Smallest ideal of the given side containing gens.

    Args:
        R: Ring
        gens: Generators (an ElementSet or element ids)
        side: Which multiplications the ideal must absorb

    Returns:
        The generated Ideal ({0} for no generators)
    """
    ids = np.asarray(_as_ids(R, gens), dtype=np.int64)
    mask = np.zeros(R.order, dtype=bool)
    if ids.size:
        if side is Side.LEFT:
            mask[R.mul_table[:, ids]] = True
        elif side is Side.RIGHT:
            mask[R.mul_table[ids, :]] = True
        else:
            # r * g * r' for all r, r'
            mask[R.mul_table[R.mul_table[:, ids], :]] = True
    return Ideal(R, mask_to_bits(_additive_closure(R, mask)), side, check=False)


def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    R = I.ring
    sums = R.add_table[np.ix_(I.ids(), J.ids())]
    mask = np.zeros(R.order, dtype=bool)
    mask[sums.ravel()] = True
    side = I.side if I.side == J.side else Side.TWO_SIDED
    return Ideal(R, mask_to_bits(mask), side, check=False)


def ideal_product(I: Ideal, J: Ideal) -> Ideal:
    """Additive span of all products xy with x in I, y in J."""
    R = I.ring
    mask = np.zeros(R.order, dtype=bool)
    mask[R.mul_table[np.ix_(I.ids(), J.ids())].ravel()] = True
    return Ideal(R, mask_to_bits(_additive_closure(R, mask)), Side.TWO_SIDED, check=False)


def _require_two_sided(R: FiniteRing, I: ElementSet, operation: str) -> np.ndarray:
    mask = I.mask()
    if isinstance(I, Ideal) and I.side is Side.TWO_SIDED:
        return mask
    problem = _ideal_violation(R, mask, Side.TWO_SIDED)
    if problem:
        raise RingInputError(f"{operation}: {I} {problem}")
    return mask


# ==================== PRIME AND SEMIPRIME ====================

def prime_witness(R: FiniteRing, P: ElementSet) -> Optional[Tuple[int, int]]:
    """First pair (a, b) outside P with aRb inside P, or None when P is prime."""
    mask = _require_two_sided(R, P, "is_prime")
    if mask[R.one]:
        raise PreconditionError("is_prime needs a proper ideal; got the whole ring")
    outside = np.flatnonzero(~mask)
    for a in outside:
        # [r, b] -> (a r) b
        products = R.mul_table[R.mul_table[a, :], :]
        escapes = (~mask[products]).any(axis=0)
        trapped = ~escapes & ~mask
        if trapped.any():
            return int(a), int(np.flatnonzero(trapped)[0])
    return None


def is_prime(R: FiniteRing, P: ElementSet) -> bool:
    """True iff a, b outside P always admit r with arb outside P."""
    return prime_witness(R, P) is None


def _sandwich_table(R: FiniteRing) -> np.ndarray:
    """[a, r] -> a r a"""
    return R.mul_table[R.mul_table, np.arange(R.order)[:, None]]


def semiprime_witness(R: FiniteRing, I: ElementSet) -> Optional[int]:
    """First a outside I with aRa inside I, or None when I is semiprime."""
    mask = _require_two_sided(R, I, "is_semiprime")
    trapped = mask[_sandwich_table(R)].all(axis=1) & ~mask
    if trapped.any():
        return int(np.flatnonzero(trapped)[0])
    return None


def is_semiprime(R: FiniteRing, I: ElementSet) -> bool:
    return semiprime_witness(R, I) is None


# ==================== IDEAL CENSUS ====================

def enumerate_ideals(R: FiniteRing, ideal_cap: Optional[int] = None) -> List[Ideal]:
    """
    All two-sided ideals of R: principal ideals closed under pairwise sums.

    Raises:
        RingResourceError: If more than ideal_cap distinct ideals appear
    """
    cap = ideal_cap if ideal_cap is not None else get_settings().ideal_cap
    masks = {}
    for a in range(R.order):
        ideal = ideal_generated(R, [a])
        masks.setdefault(ideal.bits, ideal.mask())
        if len(masks) > cap:
            raise RingResourceError(f"ideal census of {R.name} passed {cap} ideals", len(masks))

    frontier = list(masks)
    while frontier:
        fresh = []
        for bits in frontier:
            left = np.flatnonzero(masks[bits])
            for other in list(masks):
                sums = R.add_table[np.ix_(left, np.flatnonzero(masks[other]))]
                mask = np.zeros(R.order, dtype=bool)
                mask[sums.ravel()] = True
                total = mask_to_bits(mask)
                if total not in masks:
                    masks[total] = mask
                    fresh.append(total)
                    if len(masks) > cap:
                        raise RingResourceError(f"ideal census of {R.name} passed {cap} ideals", len(masks))
        frontier = fresh

    logger.debug("%s has %d two-sided ideals", R.name, len(masks))
    return sorted(Ideal(R, bits, Side.TWO_SIDED, check=False) for bits in masks)


def minimal_primes(R: FiniteRing, ideal_cap: Optional[int] = None) -> List[Ideal]:
    """Inclusion-minimal prime ideals, sorted by (size, bitset)."""
    primes = [I for I in enumerate_ideals(R, ideal_cap) if I.is_proper() and is_prime(R, I)]
    return [P for P in primes if not any(Q.bits != P.bits and Q.issubset(P) for Q in primes)]


# ==================== PRIME RADICAL ====================

@dataclass
class RadicalData:
    """The prime radical n with its powers R = n^0, n, ..., n^(nu+1) = 0."""

    radical: Ideal
    nu: int
    powers: List[Ideal]

    def power(self, i: int) -> Ideal:
        """n^i, with n^i = 0 past nu + 1."""
        return self.powers[min(i, len(self.powers) - 1)]


def prime_radical(R: FiniteRing) -> RadicalData:
    """
    Smallest semiprime ideal, found by closing {0} under "aRa inside I implies a in I".

    Returns:
        RadicalData with nu such that n^nu != 0 and n^(nu+1) = 0 (nu = 0 when n = 0)

    Raises:
        InvariantViolation: If n turns out not to be nilpotent
    """
    sandwich = _sandwich_table(R)
    current = np.zeros(R.order, dtype=bool)
    current[0] = True
    while True:
        trapped = current[sandwich].all(axis=1)
        if not (trapped & ~current).any():
            break
        current = ideal_generated(R, np.flatnonzero(trapped | current)).mask()
    radical = Ideal(R, mask_to_bits(current), Side.TWO_SIDED, check=False)

    whole = Ideal(R, (1 << R.order) - 1, Side.TWO_SIDED, check=False)
    powers = [whole, radical]
    while powers[-1].bits != 1:
        following = ideal_product(powers[-1], radical)
        if following.bits == powers[-1].bits:
            raise InvariantViolation("prime radical is nilpotent", powers[-1].ids())
        powers.append(following)
    nu = len(powers) - 2
    logger.debug("prime radical of %s: %s, nu = %d", R.name, radical, nu)
    return RadicalData(radical=radical, nu=nu, powers=powers)


# ==================== QUOTIENTS ====================

def quotient_ring(R: FiniteRing, I: ElementSet, name: Optional[str] = None) -> Tuple[FiniteRing, RingHom]:
    """
    Coset ring R/I and the canonical surjection.

    Cosets are numbered by their smallest member, so the zero coset gets id 0.

    Raises:
        RingInputError: If I is not a proper two-sided ideal
    """
    mask = _require_two_sided(R, I, "quotient_ring")
    if mask[R.one]:
        raise RingInputError("quotient by the whole ring is the zero ring")
    members = np.flatnonzero(mask)
    canonical = R.add_table[:, members].min(axis=1)
    reps = np.unique(canonical)
    coset = np.searchsorted(reps, canonical)

    add = coset[R.add_table[np.ix_(reps, reps)]]
    mul = coset[R.mul_table[np.ix_(reps, reps)]]
    label = name or f"{R.name}/{ElementSet(R, mask_to_bits(mask))}"
    Q = FiniteRing(add, mul, int(coset[R.one]), name=label, order_cap=R.order)
    pi = RingHom(R, Q, coset, name="pi")
    if pi.kernel().bits != mask_to_bits(mask):
        raise InvariantViolation("kernel of the quotient map equals the ideal", I.ids())
    return Q, pi


def semiprime_quotient(R: FiniteRing, radical: Optional[RadicalData] = None
                       ) -> Tuple[RadicalData, FiniteRing, RingHom]:
    """Radical data, R-bar = R/n and pi in one call."""
    data = radical or prime_radical(R)
    Rbar, pi = quotient_ring(R, data.radical, name=f"{R.name}/n")
    return data, Rbar, pi


# ==================== BLOCK DECOMPOSITION ====================

@dataclass
class BlockDecomposition:
    """Central primitive idempotents of a semisimple ring and its simple blocks."""

    idempotents: List[int]
    blocks: List[FiniteRing]
    projections: List[RingHom]

    @property
    def s(self) -> int:
        return len(self.idempotents)


def central_idempotents(R: FiniteRing) -> List[int]:
    ids = np.arange(R.order)
    idempotent = R.mul_table[ids, ids] == ids
    central = (R.mul_table == R.mul_table.T).all(axis=1)
    return [int(e) for e in np.flatnonzero(idempotent & central)]


def block_decomposition(Rbar: FiniteRing) -> BlockDecomposition:
    """
    Split a semiprime finite ring into simple blocks e*Rbar.

    A central idempotent e is primitive when no central idempotent f outside
    {0, e} satisfies ef = f.

    Raises:
        PreconditionError: If Rbar is not semiprime
        InvariantViolation: If the blocks are not simple or do not multiply up to Rbar
    """
    zero = Ideal(Rbar, 1, Side.TWO_SIDED, check=False)
    witness = semiprime_witness(Rbar, zero)
    if witness is not None:
        raise PreconditionError(f"{Rbar.name} is not semiprime", (witness,))

    mul = Rbar.mul_table
    candidates = central_idempotents(Rbar)
    primitive = [e for e in candidates
                 if e != 0 and not any(f not in (0, e) and mul[e, f] == f for f in candidates)]

    total = 0
    for i, e in enumerate(primitive):
        total = Rbar.add(total, e)
        for f in primitive[i + 1:]:
            if mul[e, f] != 0:
                raise InvariantViolation("block idempotents are orthogonal", (e, f))
    if total != Rbar.one:
        raise InvariantViolation("block idempotents sum to one", tuple(primitive))

    blocks, projections = [], []
    for e in primitive:
        elems = np.unique(mul[e, :])
        local = np.full(Rbar.order, -1, dtype=np.int64)
        local[elems] = np.arange(elems.size)
        block = FiniteRing(local[Rbar.add_table[np.ix_(elems, elems)]],
                           local[mul[np.ix_(elems, elems)]], int(local[e]),
                           name=f"{Rbar.name}[e={e}]", order_cap=Rbar.order)
        if len(enumerate_ideals(block)) != 2:
            raise InvariantViolation("each block is a simple ring", e)
        blocks.append(block)
        projections.append(RingHom(Rbar, block, local[mul[e, :]], name=f"p{len(blocks) - 1}"))

    if int(np.prod([b.order for b in blocks])) != Rbar.order:
        raise InvariantViolation("block orders multiply to the ring order", [b.order for b in blocks])
    logger.debug("%s splits into %d block(s) of orders %s", Rbar.name, len(blocks), [b.order for b in blocks])
    return BlockDecomposition(idempotents=primitive, blocks=blocks, projections=projections)
