"""
Ring builder - turns constructor expressions into validated FiniteRings.

Encodings (part of the report format, so they never change):
    Zn(n)       id = residue
    Mat(k, B)   entries in row-major order, read as base-|B| digits, first entry most significant
    Tri(k, B)   as Mat, over the upper-triangle positions i <= j only
    Prod(A, B)  id = a * |B| + b
    Quot(A, g)  cosets of the two-sided ideal generated by g, numbered by smallest member
    Op(A)       same ids, transposed multiplication table
"""

import logging
import os
from typing import List, Optional, Tuple, Union

import numpy as np

from finite_ring import FiniteRing
from ideals import ideal_generated, quotient_ring
from ring_errors import OrderOverflowError, RingInputError
from ring_serializer import RingExpr, parse_expr, parse_ring_file
from settings import get_settings

logger = logging.getLogger(__name__)


def matrix_positions(kind: str, k: int) -> List[Tuple[int, int]]:
    """Entry positions stored by Mat / Tri, in digit order."""
    return [(i, j) for i in range(k) for j in range(k) if kind == "Mat" or i <= j]


def _cyclic_ring(n: int, label: str, cap: int) -> FiniteRing:
    if n > cap:
        raise OrderOverflowError(n, cap)
    ids = np.arange(n)
    add = (ids[:, None] + ids[None, :]) % n
    mul = (ids[:, None] * ids[None, :]) % n
    return FiniteRing(add, mul, 1, name=label, source_expr=label, order_cap=cap)


def _matrix_ring(kind: str, k: int, base: FiniteRing, label: str, cap: int) -> FiniteRing:
    q = base.order
    positions = matrix_positions(kind, k)
    slot = {pos: p for p, pos in enumerate(positions)}
    if q ** len(positions) > cap:
        raise OrderOverflowError(q ** len(positions), cap)

    order = q ** len(positions)
    weights = q ** np.arange(len(positions) - 1, -1, -1, dtype=np.int64)
    digits = (np.arange(order)[:, None] // weights[None, :]) % q

    add = np.zeros((order, order), dtype=np.int64)
    mul = np.zeros((order, order), dtype=np.int64)
    for p, (i, j) in enumerate(positions):
        add += base.add_table[digits[:, None, p], digits[None, :, p]] * weights[p]
        entry = np.zeros((order, order), dtype=np.int64)
        for l in range(k):
            if (i, l) in slot and (l, j) in slot:
                term = base.mul_table[digits[:, None, slot[(i, l)]], digits[None, :, slot[(l, j)]]]
                entry = base.add_table[entry, term]
        mul += entry * weights[p]

    one = sum(int(base.one * weights[slot[(i, i)]]) for i in range(k))
    return FiniteRing(add, mul, one, name=label, source_expr=label, order_cap=cap)


def _product_ring(A: FiniteRing, B: FiniteRing, label: str, cap: int) -> FiniteRing:
    order = A.order * B.order
    if order > cap:
        raise OrderOverflowError(order, cap)
    ids = np.arange(order)
    ia, ib = ids // B.order, ids % B.order
    add = A.add_table[ia[:, None], ia[None, :]] * B.order + B.add_table[ib[:, None], ib[None, :]]
    mul = A.mul_table[ia[:, None], ia[None, :]] * B.order + B.mul_table[ib[:, None], ib[None, :]]
    return FiniteRing(add, mul, A.one * B.order + B.one, name=label, source_expr=label, order_cap=cap)


def _relabel(R: FiniteRing, label: str) -> FiniteRing:
    return FiniteRing(R.add_table, R.mul_table, R.one, name=label, source_expr=label,
                      validate=False, order_cap=R.order)


def _build(expr: RingExpr, cap: int) -> FiniteRing:
    label = str(expr)
    if expr.kind == "Zn":
        return _cyclic_ring(expr.size, label, cap)
    if expr.kind in ("Mat", "Tri"):
        return _matrix_ring(expr.kind, expr.size, _build(expr.args[0], cap), label, cap)
    if expr.kind == "Prod":
        return _product_ring(_build(expr.args[0], cap), _build(expr.args[1], cap), label, cap)
    if expr.kind == "Quot":
        base = _build(expr.args[0], cap)
        bad = [g for g in expr.generators if g >= base.order]
        if bad:
            raise RingInputError(f"generators {bad} are not elements of {base.name} (order {base.order})")
        ideal = ideal_generated(base, list(expr.generators))
        if not ideal.is_proper():
            raise RingInputError(f"generators {list(expr.generators)} generate all of {base.name}")
        quotient, _ = quotient_ring(base, ideal)
        return _relabel(quotient, label)
    return _relabel(_build(expr.args[0], cap).opposite(), label)


def construct(expr: Union[str, RingExpr], order_cap: Optional[int] = None) -> FiniteRing:
    """
    Build the ring named by a constructor expression.

    Args:
        expr: Expression text (e.g. "Tri(2, Zn(2))") or a parsed RingExpr
        order_cap: Largest order accepted at any step

    Returns:
        A validated FiniteRing whose source_expr is the canonical expression text

    Raises:
        ParseError: On malformed expression text
        OrderOverflowError: If any intermediate ring exceeds the cap
        RingInputError: On generators that are not elements
    """
    tree = parse_expr(expr) if isinstance(expr, str) else expr
    cap = order_cap if order_cap is not None else get_settings().order_cap
    ring = _build(tree, cap)
    logger.debug("constructed %s of order %d", ring.name, ring.order)
    return ring


def load_ring(source: str, order_cap: Optional[int] = None) -> FiniteRing:
    """Load a ring from a ring-file path, or else treat the text as a constructor expression."""
    if os.path.isfile(source):
        with open(source, "r", encoding="utf-8") as f:
            return parse_ring_file(f.read(), order_cap=order_cap)
    return construct(source, order_cap=order_cap)
