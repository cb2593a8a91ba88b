"""
FiniteRing class: a ring with identity given by explicit addition and multiplication tables.

Element ids run from 0 to order-1. Id 0 is always zero; the id of one is chosen
by whoever builds the tables.
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from element_set import ElementSet
from ring_errors import InvariantViolation, OrderOverflowError, RingInputError, RingValidationError
from settings import get_settings

logger = logging.getLogger(__name__)


@dataclass
class ValidationReport:
    """Outcome of an exhaustive axiom or homomorphism scan."""

    violations: List[Tuple[str, Tuple[int, ...]]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, name: str, witness: Tuple[int, ...]):
        """Record a failed check with its witness tuple."""
        self.violations.append((name, tuple(int(x) for x in witness)))

    def extend(self, other: 'ValidationReport'):
        self.violations.extend(other.violations)

    def to_dict(self) -> Dict:
        return {
            "ok": self.ok,
            "violations": [{"check": name, "witness": list(witness)} for name, witness in self.violations],
        }

    def __bool__(self):
        return self.ok


# ==================== TABLE VALIDATION ====================

def _coerce_tables(add_table, mul_table, one, order_cap: int) -> Tuple[np.ndarray, np.ndarray, int]:
    """Check shapes and ranges; return int32 tables and the id of one."""
    add = np.asarray(add_table)
    mul = np.asarray(mul_table)

    for label, table in (("addition", add), ("multiplication", mul)):
        if table.ndim != 2 or table.shape[0] != table.shape[1]:
            raise RingInputError(f"{label} table is not square (shape {table.shape})")
        if table.size and not np.issubdtype(table.dtype, np.integer):
            raise RingInputError(f"{label} table holds non-integer entries")
    if add.shape != mul.shape:
        raise RingInputError(f"table sizes differ: {add.shape} vs {mul.shape}")

    order = add.shape[0]
    if order > order_cap:
        raise OrderOverflowError(order, order_cap)

    for label, table in (("addition", add), ("multiplication", mul)):
        bad = (table < 0) | (table >= order)
        if bad.any():
            row, col = np.argwhere(bad)[0]
            raise RingInputError(f"{label} table entry ({row}, {col}) = {table[row, col]} is out of range")

    if not isinstance(one, (int, np.integer)) or not 0 <= int(one) < max(order, 1):
        raise RingInputError(f"one id {one} is out of range for order {order}")
    if order < 2 or int(one) == 0:
        raise RingInputError("the zero ring (one = zero) is not accepted")

    return add.astype(np.int32), mul.astype(np.int32), int(one)


def _first_cube_violation(order: int, ok_slice: Callable[[int], np.ndarray]) -> Optional[Tuple[int, int, int]]:
    """Scan a ∈ 0..order-1 and return the lexicographically first (a, b, c) failing ok_slice(a)[b, c]."""
    for a in range(order):
        bad = ~ok_slice(a)
        if bad.any():
            b, c = np.argwhere(bad)[0]
            return a, int(b), int(c)
    return None


def _scan_axioms(add: np.ndarray, mul: np.ndarray, one: int) -> ValidationReport:
    report = ValidationReport()
    order = add.shape[0]
    ids = np.arange(order)

    identity_ok = (add[0, :] == ids) & (add[:, 0] == ids)
    if not identity_ok.all():
        report.add("add_identity", (np.flatnonzero(~identity_ok)[0],))

    inverse_ok = (add == 0).any(axis=1)
    if not inverse_ok.all():
        report.add("add_inverse", (np.flatnonzero(~inverse_ok)[0],))

    commutes = add == add.T
    if not commutes.all():
        report.add("add_commutative", tuple(np.argwhere(~commutes)[0]))

    witness = _first_cube_violation(order, lambda a: add[add[a]] == add[a][add])
    if witness:
        report.add("add_associative", witness)

    witness = _first_cube_violation(order, lambda a: mul[mul[a]] == mul[a][mul])
    if witness:
        report.add("mul_associative", witness)

    # a(b+c) = ab + ac
    witness = _first_cube_violation(
        order, lambda a: mul[a][add] == add[mul[a][:, None], mul[a][None, :]])
    if witness:
        report.add("left_distributive", witness)

    # (b+c)a = ba + ca
    witness = _first_cube_violation(
        order, lambda a: mul[:, a][add] == add[mul[:, a][:, None], mul[:, a][None, :]])
    if witness:
        report.add("right_distributive", witness)

    unital = (mul[one, :] == ids) & (mul[:, one] == ids)
    if not unital.all():
        report.add("mul_identity", (np.flatnonzero(~unital)[0],))

    absorbing = (mul[0, :] == 0) & (mul[:, 0] == 0)
    if not absorbing.all():
        report.add("zero_absorbs", (np.flatnonzero(~absorbing)[0],))

    return report


def validate_ring(add_table, mul_table, one: int, order_cap: Optional[int] = None) -> ValidationReport:
    """
    Check every ring axiom exhaustively on raw tables.

    Args:
        add_table: order x order addition table of element ids
        mul_table: order x order multiplication table of element ids
        one: Id of the multiplicative identity
        order_cap: Largest accepted order (settings default when None)

    Returns:
        ValidationReport listing each failed axiom with its lexicographically first witness

    Raises:
        RingInputError: If the tables are malformed or describe the zero ring
    """
    cap = order_cap if order_cap is not None else get_settings().order_cap
    add, mul, one = _coerce_tables(add_table, mul_table, one, cap)
    return _scan_axioms(add, mul, one)


# ==================== FINITE RING ====================

class FiniteRing:
    """A finite ring with identity, immutable after construction."""

    def __init__(self, add_table, mul_table, one: int, name: Optional[str] = None,
                 source_expr: Optional[str] = None, validate: bool = True,
                 order_cap: Optional[int] = None):
        """
        Initialize a FiniteRing.

        Args:
            add_table: Addition table (zero must be id 0)
            mul_table: Multiplication table
            one: Id of the identity element
            name: Display name
            source_expr: Constructor expression that produced the ring
            validate: Run the full axiom scan
            order_cap: Largest accepted order

        Raises:
            RingInputError: On malformed tables
            RingValidationError: If an axiom fails
        """
        cap = order_cap if order_cap is not None else get_settings().order_cap
        add, mul, one = _coerce_tables(add_table, mul_table, one, cap)
        if validate:
            report = _scan_axioms(add, mul, one)
            if not report.ok:
                raise RingValidationError(report)

        add.setflags(write=False)
        mul.setflags(write=False)
        self.add_table = add
        self.mul_table = mul
        self.one = one
        self.zero = 0
        self.source_expr = source_expr
        self.name = name or source_expr or f"ring of order {add.shape[0]}"

        neg = np.argmax(add == 0, axis=1).astype(np.int32)
        neg.setflags(write=False)
        self.neg_table = neg

    @property
    def order(self) -> int:
        return self.add_table.shape[0]

    def elements(self) -> np.ndarray:
        return np.arange(self.order)

    def add(self, a: int, b: int) -> int:
        return int(self.add_table[a, b])

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def neg(self, a: int) -> int:
        return int(self.neg_table[a])

    def sub(self, a, b):
        """a - b; works elementwise on numpy arrays too."""
        result = self.add_table[a, self.neg_table[b]]
        return int(result) if np.ndim(result) == 0 else result

    def power(self, a: int, k: int) -> int:
        result = self.one
        for _ in range(k):
            result = self.mul(result, a)
        return result

    def is_commutative(self) -> bool:
        return bool((self.mul_table == self.mul_table.T).all())

    def characteristic(self) -> int:
        """Additive order of one."""
        k, x = 1, self.one
        while x != self.zero:
            x = self.add(x, self.one)
            k += 1
        return k

    def opposite(self) -> 'FiniteRing':
        """The opposite ring: same elements, multiplication a*b := ba."""
        expr = f"Op({self.source_expr})" if self.source_expr else None
        return FiniteRing(self.add_table, self.mul_table.T, self.one, name=f"Op({self.name})",
                          source_expr=expr, validate=False, order_cap=self.order)

    def element_set(self, ids: Sequence[int]) -> ElementSet:
        return ElementSet.from_ids(self, ids)

    def __eq__(self, other):
        if not isinstance(other, FiniteRing):
            return False
        if self is other:
            return True
        return (self.order == other.order and self.one == other.one
                and np.array_equal(self.add_table, other.add_table)
                and np.array_equal(self.mul_table, other.mul_table))

    def __hash__(self):
        return hash((self.order, self.one, self.mul_table.tobytes()))

    def __repr__(self):
        return f"FiniteRing({self.name}, order={self.order}, one={self.one})"

    def __str__(self):
        return f"{self.name} (order {self.order})"


# ==================== UNITS AND REGULAR ELEMENTS ====================

def units(R: FiniteRing) -> ElementSet:
    """Elements u with uv = vu = one for some v."""
    hits = R.mul_table == R.one
    return ElementSet.from_mask(R, (hits & hits.T).any(axis=1))


def _injective_rows(table: np.ndarray) -> np.ndarray:
    ordered = np.sort(table, axis=1)
    return (np.diff(ordered, axis=1) != 0).all(axis=1)


def regular_elements(R: FiniteRing) -> ElementSet:
    """
    Non-zero-divisors: c with x -> cx and x -> xc both injective.

    On a finite ring an injective self-map is a bijection, so every regular
    element is a unit. The coincidence is asserted.

    Raises:
        InvariantViolation: If the regular elements and the units differ
    """
    regular = ElementSet.from_mask(R, _injective_rows(R.mul_table) & _injective_rows(R.mul_table.T))
    unit_group = units(R)
    if regular.bits != unit_group.bits:
        stray = regular.bits ^ unit_group.bits
        raise InvariantViolation("regular elements equal units", (stray & -stray).bit_length() - 1)
    return regular


# ==================== HOMOMORPHISM CHECK ====================

def hom_check(f_map, A: FiniteRing, B: FiniteRing) -> ValidationReport:
    """
    Verify that an array of codomain ids is a unital ring homomorphism A -> B.

    Raises:
        RingInputError: If the map is not total on A or leaves B
    """
    f = np.asarray(f_map)
    if f.ndim != 1 or f.shape[0] != A.order:
        raise RingInputError(f"map has {f.size} entries, domain has order {A.order}")
    if f.size and not np.issubdtype(f.dtype, np.integer):
        raise RingInputError("map entries must be element ids")
    if ((f < 0) | (f >= B.order)).any():
        raise RingInputError(f"map sends an element outside the codomain of order {B.order}")

    report = ValidationReport()
    additive = f[A.add_table] == B.add_table[f[:, None], f[None, :]]
    if not additive.all():
        report.add("map(a+b)=map(a)+map(b)", tuple(np.argwhere(~additive)[0]))
    multiplicative = f[A.mul_table] == B.mul_table[f[:, None], f[None, :]]
    if not multiplicative.all():
        report.add("map(ab)=map(a)map(b)", tuple(np.argwhere(~multiplicative)[0]))
    if f[A.one] != B.one:
        report.add("map(one)=one", (A.one,))
    logger.debug("hom_check %s -> %s: %d violation(s)", A.name, B.name, len(report.violations))
    return report
