"""
Element sets of a finite ring, stored as integer bitsets (bit i <=> element id i).
"""

from typing import TYPE_CHECKING, Iterable, Iterator, List

import numpy as np

from ring_errors import RingInputError

if TYPE_CHECKING:
    from finite_ring import FiniteRing


def mask_to_bits(mask: np.ndarray) -> int:
    """Pack a boolean mask into an integer bitset."""
    packed = np.packbits(np.asarray(mask, dtype=bool), bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


def bits_to_mask(bits: int, size: int) -> np.ndarray:
    """Unpack an integer bitset into a boolean mask of the given length."""
    nbytes = max(1, (size + 7) // 8)
    raw = np.frombuffer(bits.to_bytes(nbytes, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:size].astype(bool)


def ids_to_bits(ids: Iterable[int]) -> int:
    bits = 0
    for element in ids:
        bits |= 1 << int(element)
    return bits


def popcount(bits: int) -> int:
    return bin(bits).count("1")


class ElementSet:
    """A set of elements of one finite ring."""

    def __init__(self, ring: 'FiniteRing', bits: int = 0):
        """
        Initialize an ElementSet.

        Args:
            ring: Owning ring
            bits: Bitset of element ids

        Raises:
            RingInputError: If a bit at or above the ring order is set
        """
        if bits < 0 or bits >> ring.order:
            raise RingInputError(f"element set {bits:#x} has ids outside a ring of order {ring.order}")
        self.ring = ring
        self.bits = bits

    @classmethod
    def from_ids(cls, ring: 'FiniteRing', ids: Iterable[int]):
        ids = [int(element) for element in ids]
        for element in ids:
            if not 0 <= element < ring.order:
                raise RingInputError(f"element id {element} is not an element of a ring of order {ring.order}")
        return cls(ring, ids_to_bits(ids))

    @classmethod
    def from_mask(cls, ring: 'FiniteRing', mask: np.ndarray):
        return cls(ring, mask_to_bits(mask))

    def ids(self) -> List[int]:
        """Get the element ids in increasing order."""
        return [int(i) for i in np.flatnonzero(self.mask())]

    def mask(self) -> np.ndarray:
        """Get a boolean numpy mask of length ring.order."""
        return bits_to_mask(self.bits, self.ring.order)

    def issubset(self, other: 'ElementSet') -> bool:
        return self.bits & ~other.bits == 0

    def union_bits(self, other: 'ElementSet') -> int:
        return self.bits | other.bits

    def intersection_bits(self, other: 'ElementSet') -> int:
        return self.bits & other.bits

    def complement_bits(self) -> int:
        return ((1 << self.ring.order) - 1) & ~self.bits

    def sort_key(self):
        """Report order: by size, then by the bitset read as an integer."""
        return (len(self), self.bits)

    def __contains__(self, element: int) -> bool:
        element = int(element)
        return 0 <= element < self.ring.order and bool(self.bits >> element & 1)

    def __iter__(self) -> Iterator[int]:
        return iter(self.ids())

    def __len__(self) -> int:
        return popcount(self.bits)

    def __eq__(self, other):
        """Two sets are equal when they live in equal rings and hold the same ids."""
        if not isinstance(other, ElementSet):
            return False
        return self.bits == other.bits and (self.ring is other.ring or self.ring == other.ring)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __hash__(self):
        return hash(self.bits)

    def __repr__(self):
        return f"{type(self).__name__}({self.ids()})"

    def __str__(self):
        return "{" + ", ".join(str(i) for i in self.ids()) + "}"


class MultSet(ElementSet):
    """A multiplicative subset: contains one, excludes zero, closed under products."""

    def __init__(self, ring: 'FiniteRing', bits: int):
        super().__init__(ring, bits)
        if not bits >> ring.one & 1:
            raise RingInputError(f"multiplicative set {self} does not contain one (id {ring.one})")
        if bits & 1:
            raise RingInputError(f"multiplicative set {self} contains zero")
        idx = np.flatnonzero(self.mask())
        products = ring.mul_table[np.ix_(idx, idx)]
        closed = self.mask()[products]
        if not closed.all():
            a, b = np.argwhere(~closed)[0]
            raise RingInputError(
                f"multiplicative set {self} is not closed: {idx[a]}*{idx[b]} = {products[a, b]}")


class ZeroAbsorbed:
    """Result of a multiplicative closure that reached zero."""

    def __init__(self, trace: List[int]):
        """
        Args:
            trace: Factors, in order, whose product is zero
        """
        self.trace = list(trace)

    def __eq__(self, other):
        return isinstance(other, ZeroAbsorbed) and self.trace == other.trace

    def __hash__(self):
        return hash(tuple(self.trace))

    def __repr__(self):
        return f"ZeroAbsorbed({'*'.join(str(x) for x in self.trace)} = 0)"
