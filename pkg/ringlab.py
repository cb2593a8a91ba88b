"""
RingLab - command-line front end of the finite ring laboratory.

Exit codes: 0 when every check passed, 1 when a property violation or
counterexample was found (the report is still written), 2 on input or
resource errors.
"""

import argparse
import json
import logging
import sys
from typing import Dict, List, Optional, Tuple

from pydantic import ValidationError

import ring_builder
from census import load_census_spec, plot_census, run_census
from criteria import corollary_2_5_check, criteria_theorem_1_2, criteria_theorem_1_3, theorem_1_1_check, \
    theorem_2_4_audit
from element_set import ZeroAbsorbed
from finite_ring import FiniteRing, regular_elements, units, validate_ring
from graded import graded_product_check, gr_ring, radical_filtration
from ideals import block_decomposition, minimal_primes, semiprime_quotient
from maxden import localization_radical, max_den, theorem_4_2_check
from ore import localize, monoid_closure, saturate
from ring_errors import InvariantViolation, RingInputError, RingResourceError, RingValidationError
from ring_serializer import parse_ring_file, serialize_ring
from settings import RingLabSettings, get_settings

logger = logging.getLogger(__name__)

CRITERIA = ("1.1", "1.2", "1.3", "2.4", "2.5", "4.2")


class RingLab:
    """Loads rings and runs one subcommand, producing (exit code, report)."""

    def __init__(self, settings: Optional[RingLabSettings] = None):
        """
        Initialize the application.

        Args:
            settings: Caps to use; read from the environment when omitted
        """
        self.settings = settings or get_settings()

    def load_ring(self, source: str) -> FiniteRing:
        """
        Load a ring from a ring file or a constructor expression.

        Args:
            source: Path to a ring file, or an expression such as "Tri(2, Zn(2))"
        """
        ring = ring_builder.load_ring(source, order_cap=self.settings.order_cap)
        logger.info("loaded %s (order %d)", ring.name, ring.order)
        return ring

    # ==================== SUBCOMMANDS ====================

    def validate(self, args) -> Tuple[int, Dict]:
        try:
            ring = self.load_ring(args.ring)
        except RingValidationError as error:
            return 1, {"ring": args.ring, "valid": False, "report": error.report.to_dict()}
        report = validate_ring(ring.add_table, ring.mul_table, ring.one, order_cap=self.settings.order_cap)
        return (0 if report.ok else 1), {"ring": ring.name, "valid": report.ok, "report": report.to_dict()}

    def info(self, args) -> Tuple[int, Dict]:
        ring = self.load_ring(args.ring)
        data, Rbar, _ = semiprime_quotient(ring)
        blocks = block_decomposition(Rbar)
        return 0, {
            "ring": ring.name,
            "order": ring.order,
            "one": ring.one,
            "characteristic": ring.characteristic(),
            "commutative": ring.is_commutative(),
            "units": len(units(ring)),
            "C": regular_elements(ring).ids(),
            "n": data.radical.ids(),
            "nu": data.nu,
            "s": blocks.s,
            "block_orders": [B.order for B in blocks.blocks],
            "encoding": ring_builder.__doc__.split("Encodings", 1)[1].strip(),
        }

    def radical(self, args) -> Tuple[int, Dict]:
        ring = self.load_ring(args.ring)
        data, Rbar, _ = semiprime_quotient(ring)
        primes = minimal_primes(ring, self.settings.ideal_cap)
        intersection = (1 << ring.order) - 1
        for P in primes:
            intersection &= P.bits
        agrees = intersection == data.radical.bits
        return (0 if agrees else 1), {
            "ring": ring.name,
            "radical": data.radical.ids(),
            "nu": data.nu,
            "powers": [P.ids() for P in data.powers],
            "minimal_primes": [P.ids() for P in primes],
            "semiprime_quotient_order": Rbar.order,
            "oracle_agrees": agrees,
        }

    def maxden(self, args) -> Tuple[int, Dict]:
        ring = self.load_ring(args.ring)
        result = max_den(ring, method=args.method, brute_cap=self.settings.brute_cap,
                         raw_cap=self.settings.raw_cap, ideal_cap=self.settings.ideal_cap)
        report = {"ring": ring.name, **result.to_dict(),
                  "localization_radical": localization_radical(ring, result).ids()}
        return 0, report

    def localize(self, args) -> Tuple[int, Dict]:
        ring = self.load_ring(args.ring)
        try:
            gens = [int(x) for x in args.set.split(",") if x.strip()]
        except ValueError as error:
            raise RingInputError(f"--set expects comma-separated element ids, got {args.set!r}") from error
        closed = monoid_closure(ring, gens)
        if isinstance(closed, ZeroAbsorbed):
            return 1, {"ring": ring.name, "generators": gens, "zero_absorbed": closed.trace}
        result = localize(ring, closed)
        return 0, {
            "ring": ring.name,
            "generators": gens,
            "closure": closed.ids(),
            "saturation": saturate(ring, closed).ids(),
            "ass": result.kernel.ids(),
            "localization": {"order": result.localized.order,
                             "characteristic": result.localized.characteristic(),
                             "units": len(units(result.localized))},
            "sigma": [int(x) for x in result.sigma.map],
        }

    def criteria(self, args) -> Tuple[int, Dict]:
        ring = self.load_ring(args.ring)
        which = CRITERIA if args.which == "all" else (args.which,)
        reports, ok = {}, True
        for label in which:
            if label == "4.2":
                pair_report = theorem_4_2_check(ring, self.settings.brute_cap, self.settings.raw_cap)
                reports[label] = pair_report.to_dict()
                ok &= pair_report.ok
                continue
            checker = {"1.1": theorem_1_1_check, "1.2": criteria_theorem_1_2, "1.3": criteria_theorem_1_3,
                       "2.4": theorem_2_4_audit, "2.5": corollary_2_5_check}[label]
            condition_report = checker(ring)
            reports[label] = condition_report.to_dict()
            ok &= condition_report.overall
        return (0 if ok else 1), {"ring": ring.name, "criteria": reports}

    def gr(self, args) -> Tuple[int, Dict]:
        ring = self.load_ring(args.ring)
        filtration = radical_filtration(ring)
        G = gr_ring(ring, filtration, gr_cap=self.settings.gr_cap)
        check = graded_product_check(G)
        return (0 if check.ok else 1), {
            "ring": ring.name,
            "nu": filtration.nu,
            "layer_sizes": G.sizes,
            "order": G.ring.order,
            "characteristic": G.ring.characteristic(),
            "one": G.ring.one,
            "degree_check": check.to_dict(),
            "add_table": G.ring.add_table.tolist(),
            "mul_table": G.ring.mul_table.tolist(),
        }

    def census(self, args) -> Tuple[int, Dict]:
        spec = load_census_spec(args.spec)
        if args.jobs is not None:
            spec = spec.model_copy(update={"jobs": args.jobs})
        report = run_census(spec)
        if args.plot:
            plot_census(report, args.plot)
        return (0 if report.ok else 1), report.to_dict()

    def export(self, args) -> Tuple[int, str]:
        ring = self.load_ring(args.ring)
        text = serialize_ring(ring)
        parse_ring_file(text, order_cap=self.settings.order_cap)
        return 0, text


def _output_options(default) -> argparse.ArgumentParser:
    """--verbose and --out, accepted before or after the subcommand."""
    options = argparse.ArgumentParser(add_help=False)
    options.add_argument("--verbose", action="store_true", default=default or False, help="Log at DEBUG level")
    options.add_argument("--out", default=default, help="Write the report here instead of stdout")
    return options


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ringlab", description="Ore localization laboratory for finite rings.",
                                     parents=[_output_options(None)])
    parser.add_argument("--brute-cap", type=int, help="Largest order for submonoid enumeration")
    parser.add_argument("--raw-cap", type=int, help="Largest order for the unrestricted submonoid oracle")
    parser.add_argument("--ideal-cap", type=int, help="Most ideals enumerated")
    parser.add_argument("--order-cap", type=int, help="Largest ring order accepted")
    commands = parser.add_subparsers(dest="command", required=True)

    def trailing():
        return _output_options(argparse.SUPPRESS)

    for name, help_text in (("validate", "Check the ring axioms"),
                            ("info", "Order, units, C, n, nu and block count"),
                            ("radical", "Prime radical, its powers and the minimal primes"),
                            ("gr", "Associated graded ring of the radical filtration"),
                            ("export", "Write the ring in ring-file format")):
        sub = commands.add_parser(name, help=help_text, parents=[trailing()])
        sub.add_argument("ring", help="Ring file path or constructor expression")

    sub = commands.add_parser("maxden", help="Maximal left denominator sets", parents=[trailing()])
    sub.add_argument("ring")
    sub.add_argument("--method", choices=["auto", "brute", "ideals"], default="auto")

    sub = commands.add_parser("localize", help="Localize at the monoid generated by --set", parents=[trailing()])
    sub.add_argument("ring")
    sub.add_argument("--set", required=True, help="Comma-separated element ids, e.g. 1,4")

    sub = commands.add_parser("criteria", help="Localization criteria reports", parents=[trailing()])
    sub.add_argument("ring")
    sub.add_argument("--which", choices=list(CRITERIA) + ["all"], default="all")

    sub = commands.add_parser("census", help="Run check suites over ring families", parents=[trailing()])
    sub.add_argument("--spec", required=True, help="Census spec JSON file")
    sub.add_argument("--jobs", type=int, help="Worker processes (overrides the spec)")
    sub.add_argument("--plot", help="Save a chart of suite outcomes to this PNG")
    return parser


def _emit(report, out: Optional[str]):
    text = report if isinstance(report, str) else json.dumps(report, indent=2, sort_keys=True)
    if out:
        with open(out, "w", encoding="utf-8") as f:
            f.write(text if text.endswith("\n") else text + "\n")
        print(f"Report written to {out}")
    else:
        print(text)


def run_command(argv: List[str]) -> Tuple[int, Dict]:
    """
    Parse argv, run the subcommand and write its report.

    Returns:
        (exit code, report); the report of a failed call describes the error
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_request:
        code = exit_request.code if isinstance(exit_request.code, int) else 2
        return code, {"error": "usage"}

    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        settings = get_settings(order_cap=args.order_cap, brute_cap=args.brute_cap,
                                raw_cap=args.raw_cap, ideal_cap=args.ideal_cap)
    except ValidationError as error:
        return 2, {"error": "settings", "message": str(error)}

    app = RingLab(settings)
    try:
        code, report = getattr(app, args.command)(args)
    except (RingInputError, RingResourceError, ValidationError, OSError) as error:
        report = {"error": type(error).__name__, "message": str(error)}
        if getattr(error, "witness", None) is not None:
            report["witness"] = [int(x) for x in error.witness]
        code = 2
    except InvariantViolation as error:
        report = {"error": "InvariantViolation", "label": error.label, "witness": str(error.witness)}
        code = 1
    _emit(report, args.out)
    return code, report


def main():
    """Main entry point."""
    code, _ = run_command(sys.argv[1:])
    sys.exit(code)


if __name__ == "__main__":
    main()
