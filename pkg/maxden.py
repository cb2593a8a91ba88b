"""
Maximal left denominator sets of finite rings.

Two independent methods: a breadth-first search over zero-free submonoids
(containing the units, or every submonoid at very small orders), and an
ideal-driven one taking preimages of the unit groups of all quotients R/a.
Block projections, the largest block denominator sets and the structural
checkers built on them live here as well.
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple, Union

import numpy as np

from element_set import ElementSet, MultSet, ZeroAbsorbed, mask_to_bits
from finite_ring import FiniteRing, ValidationReport, units
from ideals import Ideal, RadicalData, Side, block_decomposition, enumerate_ideals, ideal_generated, minimal_primes, \
    quotient_ring, semiprime_quotient
from ore import LocalizationResult, ass_ideal, closure_mask, is_left_denominator, localize, \
    monoid_closure, product_set, saturate
from ring_errors import InvariantViolation, PreconditionError, RingResourceError
from ring_hom import RingHom
from settings import get_settings

logger = logging.getLogger(__name__)


@dataclass
class MaxDenResult:
    """
    Maximal left denominator sets, sorted by (size, bitset), with their localizations.

    method is "brute", "ideals" or, from commutative_maxden, "minimal-primes".
    """

    sets: List[MultSet]
    method: str
    localizations: List[LocalizationResult]

    def to_dict(self) -> Dict:
        entries = []
        for S, loc in zip(self.sets, self.localizations):
            entries.append({
                "set": S.ids(),
                "ass": loc.kernel.ids(),
                "localization": {
                    "order": loc.localized.order,
                    "characteristic": loc.localized.characteristic(),
                    "units": len(units(loc.localized)),
                },
            })
        return {"method": self.method, "count": len(self.sets), "sets": entries}


@dataclass
class BlockProjection:
    """p_i : R -> R-bar -> i-th simple block, with the preimage of the block's units."""

    index: int
    hom: RingHom
    unit_preimage: ElementSet

    @property
    def block(self) -> FiniteRing:
        return self.hom.codomain


# ==================== SUBMONOID ENUMERATION ====================

def enumerate_submonoids(R: FiniteRing, base: Union[ElementSet, List[int]],
                         monoid_limit: Optional[int] = None) -> List[MultSet]:
    """
    All zero-free submonoids containing base, by breadth-first extension one element at a time.

    Raises:
        RingResourceError: If more than monoid_limit submonoids are visited
    """
    limit = monoid_limit if monoid_limit is not None else get_settings().monoid_limit
    ids = base.ids() if isinstance(base, ElementSet) else list(base)
    start = np.zeros(R.order, dtype=bool)
    start[ids] = True
    start = closure_mask(R, start)
    if start[R.zero]:
        return []

    seen = {mask_to_bits(start): start}
    queue = deque([mask_to_bits(start)])
    while queue:
        mask = seen[queue.popleft()]
        for x in np.flatnonzero(~mask):
            if x == R.zero:
                continue
            grown = mask.copy()
            grown[x] = True
            grown = closure_mask(R, grown)
            if grown[R.zero]:
                continue
            bits = mask_to_bits(grown)
            if bits not in seen:
                seen[bits] = grown
                queue.append(bits)
                if len(seen) > limit:
                    raise RingResourceError(f"submonoid search in {R.name} passed {limit} sets", len(seen))
    logger.debug("%s: %d zero-free submonoids over a base of %d", R.name, len(seen), len(ids))
    return sorted(MultSet(R, bits) for bits in seen)


def denominator_family(R: FiniteRing, raw: bool = False, monoid_limit: Optional[int] = None) -> List[MultSet]:
    """Left denominator sets containing the units (raw=True: all of them)."""
    base = [R.one] if raw else units(R).ids()
    return [S for S in enumerate_submonoids(R, base, monoid_limit) if is_left_denominator(R, S)]


def saturated_denominator_sets(R: FiniteRing, family: Optional[List[MultSet]] = None) -> List[MultSet]:
    family = family if family is not None else denominator_family(R)
    saturated = {}
    for S in family:
        closed = saturate(R, S)
        saturated.setdefault(closed.bits, closed)
    return sorted(saturated.values())


def maximal_sets(family: List[MultSet]) -> List[MultSet]:
    """Members not strictly contained in another member, deduplicated and sorted."""
    unique = sorted({S.bits: S for S in family}.values())
    return [S for S in unique if not any(T.bits != S.bits and S.issubset(T) for T in unique)]


def _require_brute(R: FiniteRing, brute_cap: Optional[int]) -> int:
    cap = brute_cap if brute_cap is not None else get_settings().brute_cap
    if R.order > cap:
        raise RingResourceError(f"{R.name} has order {R.order}, above the brute-force cap {cap}")
    return cap


# ==================== MAX.DEN ====================

def max_den_bruteforce(R: FiniteRing, brute_cap: Optional[int] = None, raw_cap: Optional[int] = None,
                       monoid_limit: Optional[int] = None) -> MaxDenResult:
    """
    Maximal left denominator sets by submonoid enumeration.

    Every maximal set contains the units, so the search starts from them; at
    orders up to raw_cap every submonoid is enumerated as a completeness check.

    Raises:
        RingResourceError: Above the brute-force cap
        InvariantViolation: If a maximal set is not saturated or the raw search finds an uncovered set
    """
    _require_brute(R, brute_cap)
    raw_limit = raw_cap if raw_cap is not None else get_settings().raw_cap
    maximal = maximal_sets(denominator_family(R, monoid_limit=monoid_limit))
    for S in maximal:
        if saturate(R, S).bits != S.bits:
            raise InvariantViolation("maximal denominator sets are saturated", S.ids())

    if R.order <= raw_limit:
        for D in denominator_family(R, raw=True, monoid_limit=monoid_limit):
            if not any(D.issubset(S) for S in maximal):
                raise InvariantViolation("every denominator set lies in a maximal one", D.ids())

    return MaxDenResult(sets=maximal, method="brute", localizations=[localize(R, S) for S in maximal])


def ideal_candidates(R: FiniteRing, ideal_cap: Optional[int] = None) -> List[Tuple[Ideal, MultSet]]:
    """Pairs (a, S_a) with S_a = preimage of units(R/a) a denominator set and ass(S_a) = a."""
    found = []
    for a in enumerate_ideals(R, ideal_cap):
        if not a.is_proper():
            continue
        quotient, pi = quotient_ring(R, a)
        candidate = MultSet(R, pi.preimage(units(quotient)).bits)
        if is_left_denominator(R, candidate) and ass_ideal(R, candidate).bits == a.bits:
            found.append((a, candidate))
    return found


def max_den_via_ideals(R: FiniteRing, ideal_cap: Optional[int] = None) -> MaxDenResult:
    """Maximal members among the ideal candidates S_a."""
    maximal = maximal_sets([S for _, S in ideal_candidates(R, ideal_cap)])
    return MaxDenResult(sets=maximal, method="ideals", localizations=[localize(R, S) for S in maximal])


def max_den(R: FiniteRing, method: str = "auto", brute_cap: Optional[int] = None,
            raw_cap: Optional[int] = None, ideal_cap: Optional[int] = None) -> MaxDenResult:
    """Dispatch on method: brute, ideals, or auto (brute when the order allows)."""
    if method == "brute":
        return max_den_bruteforce(R, brute_cap, raw_cap)
    if method == "ideals":
        return max_den_via_ideals(R, ideal_cap)
    if method != "auto":
        raise PreconditionError(f"unknown max.Den method {method!r}")
    cap = brute_cap if brute_cap is not None else get_settings().brute_cap
    if R.order <= cap:
        return max_den_bruteforce(R, cap, raw_cap)
    return max_den_via_ideals(R, ideal_cap)


def commutative_maxden(R: FiniteRing, ideal_cap: Optional[int] = None) -> MaxDenResult:
    """
    Complements of the minimal primes of a commutative ring.

    Raises:
        PreconditionError: If R is not commutative
        InvariantViolation: If a complement is not a saturated denominator set
    """
    if not R.is_commutative():
        witness = tuple(int(x) for x in np.argwhere(R.mul_table != R.mul_table.T)[0])
        raise PreconditionError(f"{R.name} is not commutative", witness)
    sets = []
    for p in minimal_primes(R, ideal_cap):
        S = MultSet(R, p.complement_bits())
        if not is_left_denominator(R, S) or saturate(R, S).bits != S.bits:
            raise InvariantViolation("complements of minimal primes are saturated denominator sets", S.ids())
        sets.append(S)
    sets = maximal_sets(sets)
    return MaxDenResult(sets=sets, method="minimal-primes", localizations=[localize(R, S) for S in sets])


# ==================== LOCALIZATION RADICAL ====================

def localization_radical(R: FiniteRing, result: Optional[MaxDenResult] = None) -> Ideal:
    """Intersection of ass(S) over the maximal left denominator sets."""
    result = result or max_den(R)
    bits = (1 << R.order) - 1
    for loc in result.localizations:
        bits &= loc.kernel.bits
    return Ideal(R, bits, Side.TWO_SIDED)


def exact_sequence_check(R: FiniteRing, result: Optional[MaxDenResult] = None) -> ValidationReport:
    """Kernel of r -> (sigma_S(r))_S equals the localization radical, element by element."""
    result = result or max_den(R)
    radical = localization_radical(R, result).mask()
    in_kernel = np.ones(R.order, dtype=bool)
    for loc in result.localizations:
        in_kernel &= loc.sigma.map == loc.localized.zero
    report = ValidationReport()
    differ = np.flatnonzero(in_kernel != radical)
    if differ.size:
        report.add("kernel of sigma equals the localization radical", (differ[0],))
    return report


# ==================== BLOCK PROJECTIONS ====================

def block_projections(R: FiniteRing, radical: Optional[RadicalData] = None) -> List[BlockProjection]:
    """
    Compose pi: R -> R-bar with the block projections of R-bar.

    Raises:
        InvariantViolation: If a projection's kernel misses part of the prime radical
    """
    data, Rbar, pi = semiprime_quotient(R, radical)
    projections = []
    for i, p_bar in enumerate(block_decomposition(Rbar).projections):
        hom = RingHom(R, p_bar.codomain, p_bar.map[pi.map], name=f"p{i}")
        if not data.radical.issubset(hom.kernel()):
            raise InvariantViolation("block projections kill the prime radical", i)
        projections.append(BlockProjection(index=i, hom=hom, unit_preimage=hom.preimage(units(hom.codomain))))
    return projections


def largest_block_denominator(R: FiniteRing, i: int, projections: Optional[List[BlockProjection]] = None,
                              saturated: Optional[List[MultSet]] = None,
                              brute_cap: Optional[int] = None) -> MultSet:
    """
    Largest denominator set whose image under p_i lies in the block's units.

    Closes the union of all such saturated sets and checks the closure is
    again a denominator set of the same kind.

    Raises:
        PreconditionError: If i is not a block index
        RingResourceError: Above the brute-force cap
    """
    _require_brute(R, brute_cap)
    projections = projections or block_projections(R)
    if not 0 <= i < len(projections):
        raise PreconditionError(f"block index {i} out of range for {len(projections)} block(s)")
    saturated = saturated if saturated is not None else saturated_denominator_sets(R)
    target = projections[i].unit_preimage
    members = [S for S in saturated if S.issubset(target)]

    union = 0
    for S in members:
        union |= S.bits
    closed = monoid_closure(R, ElementSet(R, union))
    if isinstance(closed, ZeroAbsorbed):
        raise InvariantViolation("union of block denominator sets avoids zero", closed.trace)
    if not is_left_denominator(R, closed) or not closed.issubset(target):
        raise InvariantViolation("closed union is a block denominator set", closed.ids())
    return closed


@dataclass
class BoundReport:
    """|max.Den(R)| against the block count s of R-bar."""

    count: int
    s: int
    commutative: bool
    block_sets: Optional[List[List[int]]] = None
    violations: List[str] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return not self.violations

    def to_dict(self) -> Dict:
        return {"count": self.count, "s": self.s, "holds": self.holds, "commutative": self.commutative,
                "block_sets": self.block_sets, "violations": self.violations}


def bound_check(R: FiniteRing, brute_cap: Optional[int] = None, raw_cap: Optional[int] = None,
                ideal_cap: Optional[int] = None) -> BoundReport:
    """
    Check count <= s, that max.Den(R) is the maximal part of the largest block
    denominator sets, that every block set contains the units, and count = s for
    commutative rings.

    The block-set comparison needs the brute-force search and is skipped above its cap.
    """
    cap = brute_cap if brute_cap is not None else get_settings().brute_cap
    result = max_den(R, brute_cap=cap, raw_cap=raw_cap, ideal_cap=ideal_cap)
    projections = block_projections(R)
    report = BoundReport(count=len(result.sets), s=len(projections), commutative=R.is_commutative())
    if report.count > report.s:
        report.violations.append(f"count {report.count} exceeds s = {report.s}")
    if report.commutative and report.count != report.s:
        report.violations.append(f"commutative ring with count {report.count} != s = {report.s}")

    if R.order <= cap:
        saturated = saturated_denominator_sets(R)
        block_sets = [largest_block_denominator(R, i, projections, saturated, cap) for i in range(report.s)]
        report.block_sets = [S.ids() for S in block_sets]
        if {S.bits for S in maximal_sets(block_sets)} != {S.bits for S in result.sets}:
            report.violations.append("max.Den differs from the maximal block denominator sets")
        unit_group = units(R)
        for i, S in enumerate(block_sets):
            if not unit_group.issubset(S):
                report.violations.append(f"block set {i} misses a unit")
    return report


# ==================== PAIRWISE ZERO-PRODUCT CRITERION ====================

@dataclass
class PairCriterionReport:
    """For each block pair, denominator sets S_i, S_j whose product reaches zero (or None)."""

    pairs: Dict[Tuple[int, int], Optional[Tuple[List[int], List[int], List[int]]]]
    count: int
    s: int
    block_sets_match: Optional[bool] = None

    @property
    def criterion(self) -> bool:
        return all(w is not None for w in self.pairs.values())

    @property
    def equality(self) -> bool:
        return self.count == self.s

    @property
    def agrees(self) -> bool:
        return self.criterion == self.equality

    @property
    def ok(self) -> bool:
        return self.agrees and self.block_sets_match is not False

    def to_dict(self) -> Dict:
        return {
            "criterion": self.criterion, "equality": self.equality, "agrees": self.agrees,
            "count": self.count, "s": self.s, "block_sets_match": self.block_sets_match,
            "pairs": [{"i": i, "j": j, "witness": None if w is None else
                       {"S_i": w[0], "S_j": w[1], "trace": w[2]}}
                      for (i, j), w in sorted(self.pairs.items())],
        }


def theorem_4_2_check(R: FiniteRing, brute_cap: Optional[int] = None,
                      raw_cap: Optional[int] = None) -> PairCriterionReport:
    """
    count = s exactly when every pair of blocks i < j has denominator sets
    S_i, S_j (images in the respective block units) with zero in S_i S_j.

    Witness pairs are the first found in (size, bitset) order.
    """
    cap = _require_brute(R, brute_cap)
    raw_limit = raw_cap if raw_cap is not None else get_settings().raw_cap
    family = denominator_family(R, raw=R.order <= raw_limit)
    projections = block_projections(R)
    per_block = [[S for S in family if S.issubset(p.unit_preimage)] for p in projections]

    pairs = {}
    for i in range(len(projections)):
        for j in range(i + 1, len(projections)):
            pairs[(i, j)] = None
            for S_i in per_block[i]:
                hit = next((S_j for S_j in per_block[j]
                            if isinstance(monoid_closure(R, ElementSet(R, S_i.bits | S_j.bits)), ZeroAbsorbed)),
                           None)
                if hit is not None:
                    trace = product_set(R, S_i, hit).trace
                    pairs[(i, j)] = (S_i.ids(), hit.ids(), trace)
                    break

    result = max_den_bruteforce(R, cap, raw_cap)
    report = PairCriterionReport(pairs=pairs, count=len(result.sets), s=len(projections))
    if report.equality:
        saturated = saturated_denominator_sets(R)
        block_sets = {largest_block_denominator(R, i, projections, saturated, cap).bits
                      for i in range(report.s)}
        report.block_sets_match = block_sets == {S.bits for S in result.sets}
    return report


# ==================== STRUCTURAL CHECKERS ====================

def regular_maxden_check(R: FiniteRing, result: Optional[MaxDenResult] = None) -> ValidationReport:
    """Units lie in every maximal set; if the units are maximal they are the only maximal set."""
    result = result or max_den(R)
    unit_group = units(R)
    report = ValidationReport()
    for S in result.sets:
        if not unit_group.issubset(S):
            report.add("units lie in every maximal denominator set", tuple(S.ids()))
    if any(S.bits == unit_group.bits for S in result.sets) and len(result.sets) != 1:
        report.add("units maximal implies a single maximal set", (len(result.sets),))
    return report


def maximal_saturation_check(R: FiniteRing, result: Optional[MaxDenResult] = None) -> ValidationReport:
    """Each maximal S equals saturate(S), sigma^-1(units of S^-1 R) and pi_a^-1(units(R/a)) for a = ass(S)."""
    result = result or max_den(R)
    report = ValidationReport()
    for S, loc in zip(result.sets, result.localizations):
        if saturate(R, S).bits != S.bits:
            report.add("maximal sets are saturated", tuple(S.ids()))
        if loc.sigma.preimage(units(loc.localized)).bits != S.bits:
            report.add("S is the preimage of the units of its localization", tuple(S.ids()))
        quotient, pi = quotient_ring(R, loc.kernel)
        if pi.preimage(units(quotient)).bits != S.bits:
            report.add("S is the preimage of the units of R/ass(S)", tuple(S.ids()))
    return report


def nil_ideal_bijection_check(R: FiniteRing, ideal_cap: Optional[int] = None) -> ValidationReport:
    """
    For a commutative ring and each ideal I inside the prime radical, S -> pi_I(S)
    is a bijection max.Den(R) -> max.Den(R/I) with inverse T -> pi_I^-1(T).

    Raises:
        PreconditionError: If R is not commutative
    """
    if not R.is_commutative():
        raise PreconditionError(f"{R.name} is not commutative")
    data, _, _ = semiprime_quotient(R)
    ours = {S.bits for S in max_den(R, ideal_cap=ideal_cap).sets}
    report = ValidationReport()
    for I in enumerate_ideals(R, ideal_cap):
        if not I.issubset(data.radical):
            continue
        quotient, pi = quotient_ring(R, I)
        theirs = {S.bits for S in max_den(quotient, ideal_cap=ideal_cap).sets}
        images = {pi.image(ElementSet(R, bits)).bits for bits in ours}
        preimages = {pi.preimage(ElementSet(quotient, bits)).bits for bits in theirs}
        if images != theirs or len(images) != len(ours):
            report.add("pi_I maps max.Den(R) onto max.Den(R/I)", tuple(I.ids()))
        if preimages != ours:
            report.add("preimage inverts pi_I on max.Den", tuple(I.ids()))
    return report


def ideal_quotient_bound_check(R: FiniteRing, ideal_cap: Optional[int] = None) -> ValidationReport:
    """|max.Den(R)| <= |max.Den(R/I)| for each ideal I with S + I inside S for every maximal S."""
    result = max_den(R, ideal_cap=ideal_cap)
    masks = [S.mask() for S in result.sets]
    report = ValidationReport()
    for I in enumerate_ideals(R, ideal_cap):
        if not I.is_proper():
            continue
        members = I.ids()
        if not all(mask[R.add_table[np.ix_(S.ids(), members)]].all() for S, mask in zip(result.sets, masks)):
            continue
        quotient, _ = quotient_ring(R, I)
        if len(result.sets) > len(max_den(quotient, ideal_cap=ideal_cap).sets):
            report.add("max.Den does not shrink when passing to R/I", tuple(members))
    return report


def quotient_denominator_check(R: FiniteRing, brute_cap: Optional[int] = None, ideal_cap: Optional[int] = None,
                               raw_cap: Optional[int] = None) -> ValidationReport:
    """
    For each left denominator set S and ideal I missing S with S^-1 I an ideal
    of S^-1 R: pi_I(S) is a denominator set of R/I and ass(S) + I lies in
    pi_I^-1(ass(pi_I(S))).

    The sets come from denominator_family, enumerated without the units up to
    raw_cap.
    """
    _require_brute(R, brute_cap)
    raw_limit = raw_cap if raw_cap is not None else get_settings().raw_cap
    report = ValidationReport()
    ideals = enumerate_ideals(R, ideal_cap)
    for S in denominator_family(R, raw=R.order <= raw_limit):
        kernel = ass_ideal(R, S)
        loc = localize(R, S)
        for I in ideals:
            if I.bits & S.bits:
                continue
            fractions = ideal_generated(loc.localized, loc.sigma.image(I), Side.LEFT)
            if fractions.bits != ideal_generated(loc.localized, fractions).bits:
                continue
            quotient, pi = quotient_ring(R, I)
            image = MultSet(quotient, pi.image(S).bits)
            if not is_left_denominator(quotient, image):
                report.add("image of S is a denominator set of R/I", tuple(S.ids()) + tuple(I.ids()))
                continue
            bound = pi.preimage(ass_ideal(quotient, image))
            if not ElementSet(R, kernel.bits | I.bits).issubset(bound):
                report.add("ass(S) + I lies over ass(pi_I(S))", tuple(S.ids()) + tuple(I.ids()))
    return report


def factorization_closure_check(R: FiniteRing, brute_cap: Optional[int] = None) -> ValidationReport:
    """yz in S forces y, z in S for saturated denominator sets S with ass(S) = 0."""
    cap = brute_cap if brute_cap is not None else get_settings().brute_cap
    candidates = saturated_denominator_sets(R) if R.order <= cap else [MultSet(R, units(R).bits)]
    report = ValidationReport()
    for S in candidates:
        if ass_ideal(R, S).bits != 1:
            continue
        mask = S.mask()
        bad = mask[R.mul_table] & ~(mask[:, None] & mask[None, :])
        if bad.any():
            report.add("factors of elements of S lie in S", tuple(np.argwhere(bad)[0]))
    return report
