"""
Criteria checkers: each condition of the localization criteria evaluated on a
concrete finite ring and reported under its conventional label ("1.2(a)",
"2.4(2f)", ...).

On a finite ring every regular element is a unit, so the classical left
quotient ring is R itself and all conditions are expected to hold. Conditions
that are automatic for finite rings are still reported, as constants with a
note, so each report lists every condition.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from element_set import ElementSet, MultSet
from finite_ring import FiniteRing, ValidationReport, regular_elements, units
from graded import Filtration, Module, c_tilde, gr_ring, radical_filtration
from ideals import Ideal, Side, block_decomposition, ideal_product, is_semiprime, minimal_primes, \
    semiprime_quotient
from ore import is_left_denominator, is_left_ore, largest_regular_ore, localize
from ring_errors import InvariantViolation, PreconditionError
from ring_hom import RingHom

logger = logging.getLogger(__name__)

FINITE_NOETHERIAN = "finite rings and their localizations are left Noetherian"
FINITE_GENERATED = "finite modules are finitely generated"
FINITE_ARTINIAN = "finite rings are left Artinian"


@dataclass
class Condition:
    label: str
    holds: bool
    witness: Tuple = ()
    note: str = ""


@dataclass
class ConditionReport:
    """Ordered condition outcomes; overall holds when every condition does."""

    title: str
    conditions: List[Condition] = field(default_factory=list)
    skipped: Optional[str] = None

    def record(self, label: str, holds: bool, witness: Tuple = (), note: str = ""):
        self.conditions.append(Condition(label, bool(holds), tuple(int(x) for x in witness), note))

    def get(self, label: str) -> Condition:
        for condition in self.conditions:
            if condition.label == label:
                return condition
        raise KeyError(label)

    @property
    def overall(self) -> bool:
        return all(c.holds for c in self.conditions)

    def failures(self) -> List[Condition]:
        return [c for c in self.conditions if not c.holds]

    def to_dict(self) -> Dict:
        return {
            "title": self.title,
            "overall": self.overall,
            "skipped": self.skipped,
            "conditions": [{"label": c.label, "holds": c.holds, "witness": list(c.witness), "note": c.note}
                           for c in self.conditions],
        }


@dataclass
class CDagger:
    """Regular elements of the semiprime quotient (which is its own quotient ring when finite)."""

    elements: ElementSet

    @classmethod
    def of(cls, Rbar: FiniteRing) -> 'CDagger':
        regular = regular_elements(Rbar)
        if regular.bits != units(Rbar).bits:
            raise InvariantViolation("regular elements of R-bar are its units", regular.ids())
        return cls(elements=regular)


@dataclass
class _Structure:
    """Radical filtration, R-bar, pi and the three regular sets of one ring."""

    R: FiniteRing
    filtration: Filtration
    Rbar: FiniteRing
    pi: RingHom
    C: ElementSet
    C_bar: ElementSet
    C_tilde: MultSet


def _structure(R: FiniteRing) -> _Structure:
    filtration = radical_filtration(R)
    _, Rbar, pi = semiprime_quotient(R, filtration)
    return _Structure(R=R, filtration=filtration, Rbar=Rbar, pi=pi, C=regular_elements(R),
                      C_bar=regular_elements(Rbar), C_tilde=c_tilde(R, filtration))


def _first_outside(inner: ElementSet, outer: ElementSet) -> Tuple:
    stray = inner.bits & ~outer.bits
    return ((stray & -stray).bit_length() - 1,) if stray else ()


# ==================== CONDITION (f) ====================

def _torsion_failure(st: _Structure, quantifier: ElementSet) -> Optional[Tuple[int, int, int]]:
    """First (c-bar, i, m) with m in N_i / N_i c-bar killed by no element of C."""
    lifts = {}
    for r in range(st.R.order):
        lifts.setdefault(st.pi(r), r)
    c_ids = st.C.ids()
    for c_bar in quantifier.ids():
        for layer in st.filtration.layers[1:]:
            module = Module.layer_quotient(st.R, layer, lifts[c_bar])
            killed = (module.action[c_ids, :] == 0).any(axis=0)
            if not killed.all():
                return c_bar, layer.index, int(np.flatnonzero(~killed)[0])
    return None


def _condition_f(st: _Structure, report: ConditionReport, label: str, quantifier: ElementSet):
    if st.filtration.nu == 0:
        report.record(label, True, note="vacuous: the prime radical is zero")
        return
    failure = _torsion_failure(st, quantifier)
    report.record(label, failure is None, failure or ())


def condition_f_check(R: FiniteRing) -> ConditionReport:
    """
    N_i / N_i c-bar is pi(C)-torsion for i = 1..nu, evaluated once with c-bar
    ranging over the regular elements of R-bar and once over pi(C).
    """
    st = _structure(R)
    report = ConditionReport("torsion of N_i / N_i c")
    _condition_f(st, report, "f[C-bar]", st.C_bar)
    _condition_f(st, report, "f[C-tilde]", st.C_tilde)
    return report


# ==================== LOCALIZATION CRITERIA ====================

def criteria_theorem_1_2(R: FiniteRing) -> ConditionReport:
    """Conditions (a)-(f) for C to be a left Ore set, in terms of R-bar and the layers N_i."""
    st = _structure(R)
    report = ConditionReport("1.2")
    report.record("1.2(a)", st.C_tilde.issubset(st.C_bar), _first_outside(st.C_tilde, st.C_bar))
    ore = is_left_ore(st.Rbar, st.C_tilde)
    report.record("1.2(b)", ore.ok, ore.witness or ())
    report.record("1.2(c)", True, note=FINITE_NOETHERIAN)
    report.record("1.2(d)", st.filtration.powers[-1].bits == 1,
                  note=f"n^{st.filtration.nu + 1} = 0")
    report.record("1.2(e)", True, note=FINITE_GENERATED)
    _condition_f(st, report, "1.2(f)", st.C_bar)
    return report


def criteria_theorem_1_3(R: FiniteRing) -> ConditionReport:
    """pi(C) inside gr R: a denominator set whose localization of gr R changes nothing."""
    st = _structure(R)
    G = gr_ring(R, st.filtration)
    S = MultSet(G.ring, G.embedding.image(st.C_tilde).bits)
    report = ConditionReport("1.3")
    verdict = is_left_denominator(G.ring, S)
    report.record("1.3(den)", verdict.ok, verdict.witness or ())
    report.record("1.3(sub)", st.C_tilde.issubset(st.C_bar), _first_outside(st.C_tilde, st.C_bar))
    report.record("1.3(noeth)", True, note=FINITE_NOETHERIAN)
    report.record("1.3(nil)", st.filtration.powers[-1].bits == 1, note=f"nu = {st.filtration.nu}")
    if verdict.ok:
        result = localize(G.ring, S)
        same = (result.kernel.bits == 1 and result.localized.order == G.ring.order
                and result.inverted_image.issubset(units(result.localized)))
        report.record("1.3(gr Q)", same, tuple(result.kernel.ids()) if not same else ())
    else:
        report.record("1.3(gr Q)", False, verdict.witness or ())
    return report


def graded_localization_check(R: FiniteRing, S: Optional[ElementSet] = None) -> ValidationReport:
    """
    Localizing gr R at a set of degree-0 elements keeps the grading: the kernel
    is a graded ideal and the quotient is the direct sum of the component images.

    Args:
        R: Ring whose associated graded ring is examined
        S: Multiplicative set of gr R inside degree 0 (default: the image of pi(C))

    Raises:
        PreconditionError: If S leaves the degree-0 component
    """
    filtration = radical_filtration(R)
    G = gr_ring(R, filtration)
    if S is None:
        S = G.embedding.image(c_tilde(R, filtration))
    S = MultSet(G.ring, S.bits)
    degree_zero = G.component_mask(0)
    if not degree_zero[S.ids()].all():
        raise PreconditionError("the localizing set must lie in degree 0", tuple(S.ids()))

    report = ValidationReport()
    verdict = is_left_denominator(G.ring, S)
    if not verdict:
        report.add("the localizing set is a denominator set of gr R", verdict.witness)
        return report
    result = localize(G.ring, S)
    for k in result.kernel.ids():
        for i in range(len(G.sizes)):
            if G.homogeneous_part(k, i) not in result.kernel:
                report.add("ass is a graded ideal", (k, i))
                return report
    image_sizes = [len(result.sigma.image(ElementSet.from_mask(G.ring, G.component_mask(i))))
                   for i in range(len(G.sizes))]
    if int(np.prod(image_sizes)) != result.localized.order:
        report.add("the localization is the direct sum of its components", tuple(image_sizes))
    return report


# ==================== AUDITS ====================

def theorem_2_4_audit(R: FiniteRing) -> ConditionReport:
    """Statements (1)-(6) relating C, n, R-bar and their quotient rings, at Q = R."""
    st = _structure(R)
    R_, n = st.R, st.filtration.radical
    report = ConditionReport("2.4")

    # (1) n from minimal primes, and powers computed from either side agree
    intersection = (1 << R_.order) - 1
    for p in minimal_primes(R_):
        intersection &= p.bits
    powers = st.filtration.powers
    compatible = all(ideal_product(powers[i], n).bits == powers[i + 1].bits
                     == ideal_product(n, powers[i]).bits for i in range(1, len(powers) - 1))
    report.record("2.4(1)", intersection == n.bits and compatible, note=f"nu = {st.filtration.nu}")

    c_ids, n_ids = st.C.ids(), n.ids()
    sums = R_.add_table[np.ix_(c_ids, n_ids)]
    inside = st.C.mask()[sums]
    witness = () if inside.all() else (c_ids[np.argwhere(~inside)[0][0]], n_ids[np.argwhere(~inside)[0][1]])
    report.record("2.4(2a)", inside.all(), witness)

    verdict = is_left_denominator(st.Rbar, st.C_tilde)
    trivial_ass = verdict.ok and localize(st.Rbar, st.C_tilde).kernel.bits == 1
    report.record("2.4(2b)", trivial_ass, verdict.witness or ())

    zero_bar = Ideal(st.Rbar, 1, Side.TWO_SIDED, check=False)
    semiprime = is_semiprime(st.Rbar, zero_bar)
    report.record("2.4(2c)", semiprime and verdict.ok
                  and localize(st.Rbar, st.C_tilde).localized.order == st.Rbar.order)
    report.record("2.4(2d)", powers[-1].bits == 1)
    report.record("2.4(2e)", True, note=FINITE_GENERATED)
    _condition_f(st, report, "2.4(2f)", st.C_tilde)
    _condition_f(st, report, "2.4(2f)[C-bar]", st.C_bar)

    try:
        blocks = block_decomposition(st.Rbar)
        report.record("2.4(3)", semiprime, note=f"{blocks.s} simple block(s)")
    except (PreconditionError, InvariantViolation) as error:
        report.record("2.4(3)", False, note=str(error))

    # (4) 1 -> 1 + n -> R* -> R-bar* -> 1
    unit_group, unit_bar = units(R_), units(st.Rbar)
    one_plus_n = ElementSet.from_ids(R_, R_.add_table[R_.one, n_ids])
    fibre = ElementSet.from_mask(R_, unit_group.mask() & (st.pi.map == st.Rbar.one))
    exact = (st.pi.image(unit_group).bits == unit_bar.bits
             and len(unit_group) == len(one_plus_n) * len(unit_bar)
             and fibre.bits == one_plus_n.bits and one_plus_n.issubset(unit_group))
    report.record("2.4(4)", exact, note=f"|R*| = {len(unit_group)} = {len(one_plus_n)} * {len(unit_bar)}")

    lifted = st.pi.preimage(st.C_bar)
    report.record("2.4(5)", lifted.bits == st.C.bits, _first_outside(lifted, st.C) or _first_outside(st.C, lifted))

    dagger = CDagger.of(st.Rbar)
    report.record("2.4(6)", dagger.elements.bits == unit_bar.bits and st.C_bar.bits == dagger.elements.bits)
    return report


def corollary_2_5_check(R: FiniteRing) -> ConditionReport:
    """Six equivalent descriptions of R-bar being its own semisimple quotient ring, each computed separately."""
    st = _structure(R)
    report = ConditionReport("2.5")
    try:
        block_decomposition(st.Rbar)
        report.record("2.5(1)", True)
    except (PreconditionError, InvariantViolation) as error:
        report.record("2.5(1)", False, note=str(error))

    C_bar_set = MultSet(st.Rbar, st.C_bar.bits)
    verdict = is_left_denominator(st.Rbar, C_bar_set)
    own_quotient = verdict.ok and localize(st.Rbar, C_bar_set).localized.order == st.Rbar.order
    report.record("2.5(2)", own_quotient, verdict.witness or ())
    report.record("2.5(3)", st.C_bar.bits == units(st.Rbar).bits, _first_outside(st.C_bar, units(st.Rbar)))
    report.record("2.5(4)", st.pi.preimage(st.C_bar).bits == st.C.bits)
    report.record("2.5(5)", st.C_tilde.bits == st.C_bar.bits, _first_outside(st.C_bar, st.C_tilde))
    report.record("2.5(6)", True, note=FINITE_ARTINIAN)
    values = {c.holds for c in report.conditions}
    report.record("2.5(agree)", len(values) == 1)
    return report


def min_prime_bijection_check(R: FiniteRing) -> ValidationReport:
    """p -> p/n and q -> pi^-1(q) are inverse bijections Min(R) <-> Min(R-bar)."""
    data, Rbar, pi = semiprime_quotient(R)
    ours = minimal_primes(R)
    theirs = {q.bits for q in minimal_primes(Rbar)}
    report = ValidationReport()
    for p in ours:
        if not data.radical.issubset(p):
            report.add("minimal primes contain n", tuple(p.ids()))
        image = pi.image(p)
        if image.bits not in theirs:
            report.add("p/n is a minimal prime of R-bar", tuple(p.ids()))
        elif pi.preimage(image).bits != p.bits:
            report.add("pi^-1(p/n) = p", tuple(p.ids()))
    ours_bits = {p.bits for p in ours}
    for bits in sorted(theirs):
        preimage = pi.preimage(ElementSet(Rbar, bits))
        if preimage.bits not in ours_bits:
            report.add("pi^-1(q) is a minimal prime of R", tuple(ElementSet(Rbar, bits).ids()))
    if len(ours) != len(theirs):
        report.add("Min(R) and Min(R-bar) have the same size", (len(ours), len(theirs)))
    return report


def theorem_1_1_check(R: FiniteRing) -> ConditionReport:
    """For semiprime R: R is semisimple and the largest regular Ore set is C."""
    report = ConditionReport("1.1")
    zero = Ideal(R, 1, Side.TWO_SIDED, check=False)
    if not is_semiprime(R, zero):
        report.skipped = f"{R.name} is not semiprime"
        return report
    try:
        blocks = block_decomposition(R)
        report.record("1.1(semisimple)", True,
                      note="block orders " + ", ".join(str(b.order) for b in blocks.blocks))
    except (PreconditionError, InvariantViolation) as error:
        report.record("1.1(semisimple)", False, note=str(error))
    regular = regular_elements(R)
    report.record("1.1(S_l = C)", largest_regular_ore(R).bits == regular.bits)
    report.record("1.1(Q = R)", localize(R, regular).localized.order == R.order)
    return report
