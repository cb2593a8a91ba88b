"""
Multiplicative sets, the left Ore and denominator conditions, ass(S),
localization of a finite ring at a left denominator set, saturation and
product sets.

On a finite ring the localization at a left denominator set S is the quotient
R/ass(S): every element of S becomes regular there, hence a unit. Both facts
are checked on every call, never assumed.
"""

import logging
from collections import deque
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Tuple, Union

import numpy as np

from element_set import ElementSet, MultSet, ZeroAbsorbed, mask_to_bits
from finite_ring import FiniteRing, ValidationReport, hom_check, regular_elements, units
from ideals import Ideal, Side, enumerate_ideals, quotient_ring
from ring_errors import InvariantViolation, PreconditionError
from ring_hom import RingHom

logger = logging.getLogger(__name__)


@dataclass
class Verdict:
    """A yes/no answer with the lexicographically first counterexample."""

    ok: bool
    witness: Optional[Tuple[int, ...]] = None
    condition: str = ""

    def __bool__(self):
        return self.ok

    def to_dict(self) -> Dict:
        return {"ok": self.ok, "condition": self.condition,
                "witness": list(self.witness) if self.witness else []}


@dataclass
class LocalizationResult:
    """S^-1 R computed as R/ass(S), with sigma: R -> S^-1 R."""

    localized: FiniteRing
    sigma: RingHom
    kernel: Ideal
    inverted_image: ElementSet


def as_mult_set(R: FiniteRing, S: Union[ElementSet, Iterable[int]]) -> MultSet:
    """Coerce ids or an ElementSet into a validated MultSet of R."""
    if isinstance(S, MultSet) and S.ring is R:
        return S
    bits = S.bits if isinstance(S, ElementSet) else ElementSet.from_ids(R, S).bits
    return MultSet(R, bits)


# ==================== MULTIPLICATIVE CLOSURE ====================

def closure_mask(R: FiniteRing, mask: np.ndarray) -> np.ndarray:
    """Masked elements plus one, closed under multiplication (zero may appear)."""
    members = mask.copy()
    members[R.one] = True
    while True:
        idx = np.flatnonzero(members)
        grown = members.copy()
        grown[R.mul_table[np.ix_(idx, idx)].ravel()] = True
        if grown.sum() == members.sum():
            return members
        members = grown


def _zero_trace(R: FiniteRing, gens: List[int]) -> List[int]:
    """Shortest word in the generators multiplying to zero, by breadth-first search from one."""
    parent: Dict[int, Optional[Tuple[int, int]]] = {R.one: None}
    queue = deque([R.one])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = R.mul(x, g)
            if y in parent:
                continue
            parent[y] = (x, g)
            if y == R.zero:
                trace = []
                step = parent[y]
                while step is not None:
                    trace.append(step[1])
                    step = parent[step[0]]
                return trace[::-1]
            queue.append(y)
    raise InvariantViolation("zero is reachable from the generators", gens)


def monoid_closure(R: FiniteRing, gens: Union[ElementSet, Iterable[int]]) -> Union[MultSet, ZeroAbsorbed]:
    """
    Smallest multiplicatively closed set containing gens and one.

    Returns:
        MultSet, or ZeroAbsorbed carrying the shortest product trace reaching zero
    """
    ids = gens.ids() if isinstance(gens, ElementSet) else ElementSet.from_ids(R, gens).ids()
    mask = np.zeros(R.order, dtype=bool)
    mask[ids] = True
    closed = closure_mask(R, mask)
    if not closed[R.zero]:
        return MultSet(R, mask_to_bits(closed))
    return ZeroAbsorbed(_zero_trace(R, ids))


# ==================== ORE AND DENOMINATOR TESTS ====================

def is_left_ore(R: FiniteRing, S: Union[ElementSet, Iterable[int]]) -> Verdict:
    """Check Sr meets Rs for every r in R and s in S."""
    S = as_mult_set(R, S)
    s_ids = np.asarray(S.ids())
    # row k: mask of R * s_k
    left_multiples = np.zeros((s_ids.size, R.order), dtype=bool)
    for k, s in enumerate(s_ids):
        left_multiples[k, R.mul_table[:, s]] = True
    for r in range(R.order):
        meets = left_multiples[:, R.mul_table[s_ids, r]].any(axis=1)
        if not meets.all():
            return Verdict(False, (r, int(s_ids[np.flatnonzero(~meets)[0]])), "ore")
    return Verdict(True)


def _killed_by(R: FiniteRing, S: ElementSet) -> np.ndarray:
    """Mask of r with sr = 0 for some s in S."""
    return (R.mul_table[S.ids(), :] == R.zero).any(axis=0)


def is_left_denominator(R: FiniteRing, S: Union[ElementSet, Iterable[int]]) -> Verdict:
    """Left Ore plus left reversibility: rs = 0 with s in S forces tr = 0 for some t in S."""
    S = as_mult_set(R, S)
    verdict = is_left_ore(R, S)
    if not verdict:
        return verdict
    s_ids = S.ids()
    killed = _killed_by(R, S)
    for r in range(R.order):
        zero_products = np.flatnonzero(R.mul_table[r, s_ids] == R.zero)
        if zero_products.size and not killed[r]:
            return Verdict(False, (r, s_ids[zero_products[0]]), "reversibility")
    return Verdict(True)


def is_right_ore(R: FiniteRing, S: Union[ElementSet, Iterable[int]]) -> Verdict:
    """Right Ore condition, evaluated as the left condition in Op(R)."""
    Rop = R.opposite()
    bits = as_mult_set(R, S).bits
    return is_left_ore(Rop, MultSet(Rop, bits))


def is_right_denominator(R: FiniteRing, S: Union[ElementSet, Iterable[int]]) -> Verdict:
    Rop = R.opposite()
    bits = as_mult_set(R, S).bits
    return is_left_denominator(Rop, MultSet(Rop, bits))


def ass_ideal(R: FiniteRing, S: Union[ElementSet, Iterable[int]]) -> ElementSet:
    """
    ass(S) = {r : sr = 0 for some s in S}.

    Returns:
        A two-sided Ideal when S is left Ore, otherwise a plain ElementSet

    Raises:
        InvariantViolation: If S is left Ore but ass(S) is not a two-sided ideal
    """
    S = as_mult_set(R, S)
    bits = mask_to_bits(_killed_by(R, S))
    if not is_left_ore(R, S):
        return ElementSet(R, bits)
    try:
        return Ideal(R, bits, Side.TWO_SIDED)
    except ValueError as error:
        raise InvariantViolation("ass of a left Ore set is an ideal", ElementSet(R, bits).ids()) from error


# ==================== LOCALIZATION ====================

def localize(R: FiniteRing, S: Union[ElementSet, Iterable[int]]) -> LocalizationResult:
    """
    Localize R at a left denominator set.

    Raises:
        PreconditionError: If S is not a left denominator set (carries the witness)
        InvariantViolation: If an element of S does not become a unit
    """
    S = as_mult_set(R, S)
    verdict = is_left_denominator(R, S)
    if not verdict:
        raise PreconditionError(f"{S} is not a left denominator set of {R.name} ({verdict.condition} fails)",
                                verdict.witness)
    kernel = ass_ideal(R, S)
    localized, sigma = quotient_ring(R, kernel, name=f"{R.name}[{S}^-1]")
    sigma.name = "sigma"
    image = sigma.image(S)
    if not image.issubset(units(localized)):
        stray = [s for s in S.ids() if sigma(s) not in units(localized)]
        raise InvariantViolation("images of S are units of the localization", stray[:1])
    return LocalizationResult(localized=localized, sigma=sigma, kernel=kernel, inverted_image=image)


def saturate(R: FiniteRing, S: Union[ElementSet, Iterable[int]]) -> MultSet:
    """
    sigma^-1 of the units of S^-1 R.

    Raises:
        PreconditionError: As localize
        InvariantViolation: If the result loses S, the denominator property or ass(S)
    """
    S = as_mult_set(R, S)
    result = localize(R, S)
    saturated = MultSet(R, result.sigma.preimage(units(result.localized)).bits)
    if not S.issubset(saturated):
        raise InvariantViolation("saturation contains S", S.ids())
    if not is_left_denominator(R, saturated):
        raise InvariantViolation("saturation is a left denominator set", saturated.ids())
    if ass_ideal(R, saturated).bits != result.kernel.bits:
        raise InvariantViolation("saturation keeps ass(S)", saturated.ids())
    return saturated


def product_set(R: FiniteRing, S: Union[ElementSet, Iterable[int]],
                T: Union[ElementSet, Iterable[int]]) -> Union[MultSet, ZeroAbsorbed]:
    """
    Submonoid generated by S and T.

    When both are left denominator sets and zero is avoided, the product is
    asserted to be a left denominator set as well.
    """
    S, T = as_mult_set(R, S), as_mult_set(R, T)
    closed = monoid_closure(R, ElementSet(R, S.bits | T.bits))
    if isinstance(closed, MultSet) and is_left_denominator(R, S) and is_left_denominator(R, T):
        verdict = is_left_denominator(R, closed)
        if not verdict:
            raise InvariantViolation("product of denominator sets avoiding zero is a denominator set",
                                     verdict.witness)
    return closed


def largest_regular_ore(R: FiniteRing) -> MultSet:
    """
    Largest left Ore set of regular elements.

    Every regular element of a finite ring is a unit, so this is the unit group,
    and the left quotient ring of R is R itself.
    """
    regular = regular_elements(R)
    result = MultSet(R, units(R).bits)
    if result.bits != regular.bits:
        raise InvariantViolation("largest regular Ore set is the set of regular elements", result.ids())
    for label, verdict in (("left", is_left_ore(R, result)), ("right", is_right_ore(R, result))):
        if not verdict:
            raise InvariantViolation(f"units form a {label} Ore set", verdict.witness)
    for c in regular.ids():
        cyclic = monoid_closure(R, [c])
        if not isinstance(cyclic, MultSet) or not cyclic.issubset(result):
            raise InvariantViolation("Ore sets of regular elements lie in the unit group", (c,))
    return result


# ==================== UNIVERSAL PROPERTY ====================

def localization_universal_check(R: FiniteRing, S: Union[ElementSet, Iterable[int]],
                                 ideal_cap: Optional[int] = None) -> ValidationReport:
    """
    Every quotient map f: R -> R/J inverting S factors through sigma.

    The factor map is read off as g(sigma(r)) = f(r); it must be well defined and
    a ring homomorphism.
    """
    S = as_mult_set(R, S)
    result = localize(R, S)
    report = ValidationReport()
    for J in enumerate_ideals(R, ideal_cap):
        if not J.is_proper():
            continue
        target, f = quotient_ring(R, J)
        if not f.image(S).issubset(units(target)):
            continue
        g = np.zeros(result.localized.order, dtype=np.int64)
        g[result.sigma.map] = f.map
        mismatch = np.flatnonzero(g[result.sigma.map] != f.map)
        if mismatch.size:
            report.add("factors through sigma", (mismatch[0],) + tuple(J.ids()))
            continue
        for check, witness in hom_check(g, result.localized, target).violations:
            report.add(f"factor map {check}", witness)
    return report
