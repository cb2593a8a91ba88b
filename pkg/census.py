"""
Census runner - instantiates families of rings, runs the selected check
suites on each one and aggregates a deterministic JSON report.

A census spec is a JSON document validated by CensusSpec, e.g.

    {
      "generators": [{"expr": "Zn({n})", "n_min": 2, "n_max": 16}],
      "suites": ["thm-1.8", "radical-oracle"],
      "jobs": 4
    }
"""

import json
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, Field, field_validator, model_validator

from criteria import ConditionReport, condition_f_check, corollary_2_5_check, criteria_theorem_1_2, \
    criteria_theorem_1_3, graded_localization_check, min_prime_bijection_check, theorem_1_1_check, \
    theorem_2_4_audit
from finite_ring import FiniteRing, ValidationReport, regular_elements, units, validate_ring
from graded import brute_force_ore_pair, graded_product_check, gr_ring, max_ker_check, ore_solve, \
    radical_filtration
from ideals import Ideal, Side, block_decomposition, enumerate_ideals, is_prime, is_semiprime, minimal_primes, \
    semiprime_quotient
from maxden import bound_check, commutative_maxden, exact_sequence_check, factorization_closure_check, \
    ideal_quotient_bound_check, max_den, max_den_bruteforce, max_den_via_ideals, maximal_saturation_check, \
    nil_ideal_bijection_check, quotient_denominator_check, regular_maxden_check, saturated_denominator_sets, \
    theorem_4_2_check
from ore import ass_ideal, largest_regular_ore, localization_universal_check, saturate
from ring_builder import construct
from ring_errors import InvariantViolation, RingInputError, RingResourceError
from settings import get_settings

logger = logging.getLogger(__name__)

Failures = List[Tuple[str, Any]]


# ==================== SPEC ====================

class GeneratorSpec(BaseModel):
    """One family: an expression, optionally templated over {n}."""

    expr: str
    n_values: Optional[List[int]] = None
    n_min: Optional[int] = Field(None, ge=1)
    n_max: Optional[int] = Field(None, ge=1)

    @model_validator(mode="after")
    def check_range(self) -> 'GeneratorSpec':
        if "{n}" in self.expr and self.n_values is None and (self.n_min is None or self.n_max is None):
            raise ValueError(f"generator {self.expr!r} needs n_values or n_min/n_max")
        if self.n_min is not None and self.n_max is not None and self.n_min > self.n_max:
            raise ValueError(f"n_min {self.n_min} exceeds n_max {self.n_max}")
        return self

    def expand(self) -> List[str]:
        if "{n}" not in self.expr:
            return [self.expr]
        values = self.n_values if self.n_values is not None else range(self.n_min, self.n_max + 1)
        return [self.expr.replace("{n}", str(n)) for n in values]


class CensusSpec(BaseModel):
    """Ring families, suite selection, caps and worker count for one census run."""

    generators: List[GeneratorSpec] = Field(..., min_length=1)
    suites: List[str] = Field(default_factory=lambda: ["axioms", "radical-oracle"], min_length=1)
    brute_cap: Optional[int] = Field(None, gt=0)
    raw_cap: Optional[int] = Field(None, gt=0)
    ideal_cap: Optional[int] = Field(None, gt=0)
    order_cap: Optional[int] = Field(None, gt=1)
    jobs: int = Field(1, ge=1)

    @field_validator("suites")
    @classmethod
    def check_suites(cls, suites: List[str]) -> List[str]:
        unknown = [name for name in suites if name not in SUITES]
        if unknown:
            raise ValueError(f"unknown suites {unknown}; known: {sorted(SUITES)}")
        return suites

    @model_validator(mode="after")
    def fill_caps(self) -> 'CensusSpec':
        defaults = get_settings()
        for cap in ("brute_cap", "raw_cap", "ideal_cap", "order_cap"):
            if getattr(self, cap) is None:
                setattr(self, cap, getattr(defaults, cap))
        return self

    def sources(self) -> List[str]:
        """Expanded expressions, first occurrence kept."""
        seen = {}
        for generator in self.generators:
            for source in generator.expand():
                seen.setdefault(source, None)
        return list(seen)


# ==================== SUITES ====================

def _violations(report: ValidationReport) -> Failures:
    return list(report.violations)


def _condition_failures(*reports: ConditionReport) -> Failures:
    return [(c.label, c.witness) for report in reports for c in report.failures()]


def _within_brute(R: FiniteRing, spec: CensusSpec):
    if R.order > spec.brute_cap:
        raise RingResourceError(f"{R.name} has order {R.order}, above the brute-force cap {spec.brute_cap}")


def _suite_axioms(R: FiniteRing, spec: CensusSpec) -> Failures:
    return _violations(validate_ring(R.add_table, R.mul_table, R.one, order_cap=spec.order_cap))


def _suite_radical_oracle(R: FiniteRing, spec: CensusSpec) -> Failures:
    data, Rbar, _ = semiprime_quotient(R)
    report = ValidationReport()
    primes = minimal_primes(R, spec.ideal_cap)
    intersection = (1 << R.order) - 1
    for P in primes:
        intersection &= P.bits
    if intersection != data.radical.bits:
        report.add("prime radical equals the intersection of minimal primes", tuple(data.radical.ids()))
    if not is_semiprime(Rbar, Ideal(Rbar, 1, Side.TWO_SIDED, check=False)):
        report.add("R/n is semiprime", ())
    ideals = [I for I in enumerate_ideals(R, spec.ideal_cap) if I.is_proper()]
    for P in primes:
        if not is_prime(R, P):
            report.add("minimal primes are prime", tuple(P.ids()))
        for I in ideals:
            if I.bits != P.bits and I.issubset(P) and is_prime(R, I):
                report.add("no prime lies strictly below a minimal prime", tuple(I.ids()))
    blocks = block_decomposition(Rbar)
    if int(np.prod([B.order for B in blocks.blocks])) != Rbar.order:
        report.add("block orders multiply to |R/n|", tuple(B.order for B in blocks.blocks))
    return _violations(report)


def _suite_maxden_oracle(R: FiniteRing, spec: CensusSpec) -> Failures:
    brute = max_den_bruteforce(R, spec.brute_cap, spec.raw_cap)
    via_ideals = max_den_via_ideals(R, spec.ideal_cap)
    failures = []
    if [S.bits for S in brute.sets] != [S.bits for S in via_ideals.sets]:
        failures.append(("brute force and ideal candidates agree on max.Den",
                         [S.ids() for S in via_ideals.sets]))
    failures += _violations(maximal_saturation_check(R, brute))
    failures += _violations(exact_sequence_check(R, brute))
    return failures


def _suite_thm_1_8(R: FiniteRing, spec: CensusSpec) -> Failures:
    if not R.is_commutative():
        return []
    expected = commutative_maxden(R, spec.ideal_cap)
    found = max_den(R, brute_cap=spec.brute_cap, raw_cap=spec.raw_cap, ideal_cap=spec.ideal_cap)
    if [S.bits for S in expected.sets] != [S.bits for S in found.sets]:
        return [("max.Den is the set of complements of minimal primes", [S.ids() for S in found.sets])]
    return []


def _suite_thm_1_4(R: FiniteRing, spec: CensusSpec) -> Failures:
    report = bound_check(R, spec.brute_cap, spec.raw_cap, spec.ideal_cap)
    return [(violation, (report.count, report.s)) for violation in report.violations]


def _suite_prop_2_3(R: FiniteRing, spec: CensusSpec) -> Failures:
    result = max_den(R, brute_cap=spec.brute_cap, raw_cap=spec.raw_cap, ideal_cap=spec.ideal_cap)
    regular = largest_regular_ore(R)
    failures = [("regular Ore set lies in every maximal set", S.ids())
                for S in result.sets if not regular.issubset(S)]
    return failures + _violations(regular_maxden_check(R, result))


def _suite_prop_3_5(R: FiniteRing, spec: CensusSpec) -> Failures:
    _within_brute(R, spec)
    failures = []
    for S in saturated_denominator_sets(R):
        failures += _violations(max_ker_check(R, S))
    return failures


def _suite_prop_4_5(R: FiniteRing, spec: CensusSpec) -> Failures:
    if not R.is_commutative():
        return []
    return _violations(nil_ideal_bijection_check(R, spec.ideal_cap))


def _suite_prop_4_7(R: FiniteRing, spec: CensusSpec) -> Failures:
    return _violations(quotient_denominator_check(R, spec.brute_cap, spec.ideal_cap, spec.raw_cap))


def _suite_prop_4_8(R: FiniteRing, spec: CensusSpec) -> Failures:
    return _violations(factorization_closure_check(R, spec.brute_cap))


def _suite_thm_4_2(R: FiniteRing, spec: CensusSpec) -> Failures:
    report = theorem_4_2_check(R, spec.brute_cap, spec.raw_cap)
    if report.ok:
        return []
    return [("pair criterion agrees with |max.Den| = s", (report.count, report.s))]


def _suite_thm_4_3(R: FiniteRing, spec: CensusSpec) -> Failures:
    return _violations(ideal_quotient_bound_check(R, spec.ideal_cap))


def _suite_thm_1_1(R: FiniteRing, spec: CensusSpec) -> Failures:
    return _condition_failures(theorem_1_1_check(R))


def _suite_thm_1_2(R: FiniteRing, spec: CensusSpec) -> Failures:
    return _condition_failures(criteria_theorem_1_2(R), condition_f_check(R))


def _suite_thm_1_3(R: FiniteRing, spec: CensusSpec) -> Failures:
    return _condition_failures(criteria_theorem_1_3(R)) + _violations(graded_localization_check(R))


def _suite_thm_2_4(R: FiniteRing, spec: CensusSpec) -> Failures:
    return _condition_failures(theorem_2_4_audit(R))


def _suite_cor_2_5(R: FiniteRing, spec: CensusSpec) -> Failures:
    return _condition_failures(corollary_2_5_check(R))


def _suite_cor_3_1(R: FiniteRing, spec: CensusSpec) -> Failures:
    return _violations(min_prime_bijection_check(R))


def _suite_ore_solve(R: FiniteRing, spec: CensusSpec) -> Failures:
    filtration = radical_filtration(R)
    if filtration.nu == 0:
        return []
    failures = []
    for c in regular_elements(R).ids():
        for r in range(R.order):
            ore_solve(R, c, r, filtration)
            if brute_force_ore_pair(R, c, r) is None:
                failures.append(("brute-force search finds an Ore pair", (c, r)))
    return failures


def _suite_gr(R: FiniteRing, spec: CensusSpec) -> Failures:
    G = gr_ring(R)
    failures = _violations(validate_ring(G.ring.add_table, G.ring.mul_table, G.ring.one, order_cap=G.ring.order))
    if G.ring.order != R.order:
        failures.append(("|gr R| = |R|", (G.ring.order, R.order)))
    return failures + _violations(graded_product_check(G))


def _suite_localization(R: FiniteRing, spec: CensusSpec) -> Failures:
    _within_brute(R, spec)
    failures = []
    for S in saturated_denominator_sets(R):
        failures += _violations(localization_universal_check(R, S, spec.ideal_cap))
        twice = saturate(R, S)
        if twice.bits != S.bits or ass_ideal(R, twice).bits != ass_ideal(R, S).bits:
            failures.append(("saturation is idempotent and keeps ass", S.ids()))
    return failures


SUITES: Dict[str, Callable[[FiniteRing, CensusSpec], Failures]] = {
    "axioms": _suite_axioms,
    "radical-oracle": _suite_radical_oracle,
    "maxden-oracle": _suite_maxden_oracle,
    "thm-1.1": _suite_thm_1_1,
    "thm-1.2": _suite_thm_1_2,
    "thm-1.3": _suite_thm_1_3,
    "thm-1.4": _suite_thm_1_4,
    "thm-1.8": _suite_thm_1_8,
    "thm-2.4": _suite_thm_2_4,
    "cor-2.5": _suite_cor_2_5,
    "cor-3.1": _suite_cor_3_1,
    "prop-2.3": _suite_prop_2_3,
    "prop-3.5": _suite_prop_3_5,
    "thm-4.2": _suite_thm_4_2,
    "thm-4.3": _suite_thm_4_3,
    "prop-4.5": _suite_prop_4_5,
    "prop-4.7": _suite_prop_4_7,
    "prop-4.8": _suite_prop_4_8,
    "ore-solve": _suite_ore_solve,
    "gr": _suite_gr,
    "localization": _suite_localization,
}


# ==================== REPORT ====================

def _plain(value: Any) -> Any:
    """Numpy scalars and tuples to JSON-native values."""
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.bool_):
        return bool(value)
    return value


def fingerprint(R: FiniteRing, source: str) -> Dict:
    _, Rbar, _ = semiprime_quotient(R)
    return {
        "order": R.order,
        "characteristic": R.characteristic(),
        "units": len(units(R)),
        "blocks": block_decomposition(Rbar).s,
        "source": source,
    }


def _fingerprint_key(entry: Dict) -> Tuple:
    fp = entry["fingerprint"]
    return (fp.get("order", 0), fp.get("characteristic", 0), fp.get("units", 0), fp.get("blocks", 0),
            fp["source"])


@dataclass
class CensusReport:
    """Per-ring suite outcomes in fingerprint order; ok exactly when nothing failed."""

    rings: List[Dict] = field(default_factory=list)
    counterexamples: List[Dict] = field(default_factory=list)
    skips: List[Dict] = field(default_factory=list)

    @property
    def verdict(self) -> str:
        if self.counterexamples:
            return "fail"
        return "ok-with-skips" if self.skips else "ok"

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def to_dict(self) -> Dict:
        return {"verdict": self.verdict, "ring_count": len(self.rings), "rings": self.rings,
                "counterexamples": self.counterexamples, "skips": self.skips}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def _run_ring(source: str, spec: CensusSpec) -> Dict:
    """Build one ring and run every selected suite on it."""
    entry = {"fingerprint": {"source": source}, "suites": {}}
    try:
        R = construct(source, order_cap=spec.order_cap)
        entry["fingerprint"] = fingerprint(R, source)
    except (RingResourceError, RingInputError) as error:
        entry["skipped"] = str(error)
        return entry
    except InvariantViolation as error:
        entry["suites"]["fingerprint"] = {
            "status": "fail", "failures": [{"label": error.label, "witness": _plain(error.witness)}]}
        return entry

    for name in spec.suites:
        started = time.perf_counter()
        try:
            failures = SUITES[name](R, spec)
            outcome = {"status": "fail" if failures else "ok",
                       "failures": [{"label": label, "witness": _plain(w)} for label, w in failures]}
        except RingResourceError as error:
            outcome = {"status": "skipped", "reason": str(error)}
        except (InvariantViolation, RingInputError) as error:
            label = getattr(error, "label", type(error).__name__)
            witness = getattr(error, "witness", None)
            outcome = {"status": "fail", "failures": [{"label": label, "witness": _plain(witness)}]}
        entry["suites"][name] = outcome
        logger.debug("%s %s: %s in %.3fs", source, name, outcome["status"], time.perf_counter() - started)
    return entry


def run_census(spec: CensusSpec) -> CensusReport:
    """
    Run every selected suite on every generated ring.

    Rings are processed in a process pool when jobs > 1; the report is ordered
    by fingerprint, so its JSON is the same for any job count.
    """
    sources = spec.sources()
    logger.info("census over %d ring(s), suites %s, %d job(s)", len(sources), ",".join(spec.suites), spec.jobs)
    if spec.jobs > 1:
        with ProcessPoolExecutor(max_workers=spec.jobs) as pool:
            entries = list(pool.map(_run_ring, sources, [spec] * len(sources)))
    else:
        entries = [_run_ring(source, spec) for source in sources]

    report = CensusReport(rings=sorted(entries, key=_fingerprint_key))
    for entry in report.rings:
        source = entry["fingerprint"]["source"]
        if "skipped" in entry:
            report.skips.append({"source": source, "suite": None, "reason": entry["skipped"]})
            logger.warning("skipped %s: %s", source, entry["skipped"])
            continue
        for name, outcome in entry["suites"].items():
            if outcome["status"] == "skipped":
                report.skips.append({"source": source, "suite": name, "reason": outcome["reason"]})
                logger.warning("%s skipped %s: %s", source, name, outcome["reason"])
            for failure in outcome.get("failures", []):
                report.counterexamples.append({"source": source, "suite": name, **failure})
    logger.info("census verdict %s: %d counterexample(s), %d skip(s)", report.verdict,
                len(report.counterexamples), len(report.skips))
    return report


def load_census_spec(path: str) -> CensusSpec:
    with open(path, "r", encoding="utf-8") as f:
        return CensusSpec.model_validate_json(f.read())


# ==================== CHART ====================

def plot_census(report: CensusReport, filename: str = 'census.png'):
    """
    Chart suite outcomes per ring, rings ordered by fingerprint.

    Args:
        report: A finished census report
        filename: Output image path
    """
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    labels = [entry["fingerprint"]["source"] for entry in report.rings]
    counts = {status: [] for status in ("ok", "fail", "skipped")}
    for entry in report.rings:
        statuses = [outcome["status"] for outcome in entry["suites"].values()]
        for status in counts:
            counts[status].append(statuses.count(status))

    fig, ax = plt.subplots(figsize=(max(8, len(labels) * 0.4), 6))
    positions = np.arange(len(labels))
    bottom = np.zeros(len(labels))
    for status, color in (("ok", "#2ca02c"), ("fail", "#d62728"), ("skipped", "#7f7f7f")):
        ax.bar(positions, counts[status], bottom=bottom, color=color, label=status)
        bottom += counts[status]
    ax.set_xticks(positions)
    ax.set_xticklabels(labels, rotation=75, ha="right", fontsize=8)
    ax.set_ylabel("Suites")
    ax.set_title(f"Census verdict: {report.verdict}", fontweight="bold")
    ax.legend()
    ax.grid(True, axis="y", alpha=0.3)

    plt.tight_layout()
    plt.savefig(filename, dpi=150, bbox_inches="tight")
    plt.close(fig)
    logger.info("census chart saved as %s", filename)
