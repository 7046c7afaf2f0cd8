#!/usr/bin/env python3
"""
Command-line interface for the Hall/Frattini engine.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

from . import __version__
from .config import get_settings, load_settings, set_settings, setup_logging
from .constructions import BuiltGroup, SymbolicProduct, build, parse_group_expr, parse_group_file
from .corpus import CorpusManager
from .errors import (
    BoundExceededError,
    ContainmentError,
    GroupEngineError,
    HypothesisViolation,
    InvalidAutomorphismError,
    NotEPiError,
    ParseError,
    PreconditionError,
    UnsupportedAtomError,
)
from .frattini import FrattiniWitness, frattini_constructive, frattini_oracle
from .hall import PrimeSet, hall_classes, primes_of
from .perm_core import (
    PermGroup,
    Subgroup,
    format_perm,
    is_normal,
    is_simple,
    is_solvable,
    minimal_normal_subgroups,
    parse_cycles,
)
from .product_symbolic import remark2_report, symbolic_hall_report
from .reports import RunDocument, RunFooter, RunHeader, hall_report, remark1_report, witness_record
from .subgroup_enum import normal_subgroups

EXIT_OK = 0
EXIT_VIOLATION = 2
EXIT_USAGE = 3
EXIT_BOUND = 4

NOT_E_PI_HINT = (
    "the theorem needs G in E_pi; A in E_pi is not enough "
    "(see `counterexample remark1` for GL(3,2) extended by its inverse-transpose involution)"
)

logger = logging.getLogger(__name__)


class _ArgumentParser(argparse.ArgumentParser):
    """Usage errors exit with the usage code instead of argparse's 2."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class EngineCLI:
    """Loads groups and resolves subgroup selectors for the commands."""

    def __init__(self):
        self.logger = logging.getLogger(__name__)

    def load_group(
        self, group: Optional[str], file: Optional[str], allow_symbolic: bool = False
    ) -> Union[BuiltGroup, SymbolicProduct]:
        """
        Build the group named by ``--group`` or ``--file``.

        Args:
            group: Group expression
            file: Path to a group file
            allow_symbolic: Hand back a SymbolicProduct for products over max_order

        Returns:
            The built group, or a symbolic handle
        """
        if bool(group) == bool(file):
            raise PreconditionError("exactly one of --group and --file is required")
        expr = parse_group_file(file) if file else parse_group_expr(group)
        built = build(expr, allow_symbolic=allow_symbolic)
        if isinstance(built, SymbolicProduct):
            return built
        self.logger.info(f"Built {built.name}: order {built.group.order}, degree {built.group.degree}")
        return built

    def normal_subgroups(self, built: BuiltGroup, selector: str) -> List[Subgroup]:
        """
        Resolve ``--normal``.

        Selectors: ``auto`` (all normal subgroups), ``trivial``, ``whole``,
        ``derived``, a named subgroup label, or generators in cycle notation
        separated by ``;``.
        """
        G = built.group
        if selector == "auto":
            return normal_subgroups(G)
        if selector == "trivial":
            return [Subgroup(G, PermGroup(G.degree), "trivial")]
        if selector == "whole":
            return [Subgroup(G, G, "whole")]
        if selector == "derived":
            return [Subgroup.of(G, list(G.sympy_group.derived_subgroup().generators), "derived")]
        if selector in built.named_subgroups:
            candidate = built.named_subgroups[selector]
        else:
            gens = [parse_cycles(text, G.degree) for text in selector.split(";") if text.strip()]
            candidate = Subgroup.of(G, gens, "selected")
        if not is_normal(G, candidate):
            raise PreconditionError(f"subgroup {selector!r} is not normal")
        return [candidate]

    def hall_factors(self, built: BuiltGroup) -> Optional[List[Subgroup]]:
        """Direct factors when they decompose the whole group."""
        if not built.factors:
            return None
        total = 1
        for f in built.factors:
            total *= f.order
        return built.factors if total == built.group.order else None


def _emit(args, command: str, body: List[Dict[str, Any]], text: str, violations: int = 0, errors: int = 0) -> None:
    """Print text or a run document; write the document to --out when given."""
    flags = {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "verbose", "config", "log_level")}
    document = RunDocument(
        header=RunHeader(version=__version__, command=command, flags=flags),
        body=body,
        footer=RunFooter(records=len(body), violations=violations, errors=errors),
    )
    payload = document.model_dump_json(indent=2)
    if getattr(args, "out", None):
        Path(args.out).write_text(payload + "\n", encoding="utf-8")
        print(f"📄 Results written to {args.out}")
    print(payload if getattr(args, "json", False) else text)


def _format_witness(w: FrattiniWitness) -> str:
    lines = [
        f"  [{w.method.value}] |A|={w.A.order}: H of order {w.H.order}, |N_G(H)|={w.normalizer.order}",
        f"     H = <{', '.join(format_perm(g) for g in w.H.generators) or '()'}>",
        f"     G = A·N_G(H): {w.checks.product_covers_G}; N_G(H) in E_pi: {w.checks.normalizer_in_E_pi}; "
        f"Hall(N_G(H)) ⊆ Hall(G): {w.checks.normalizer_hall_is_G_hall}",
    ]
    for step in w.trace:
        lines.append(f"     {'  ' * step.depth}{step.kind.value}: {step.detail}")
    return "\n".join(lines)


def cmd_hall_analyze(args) -> int:
    """Command to classify a group for a prime set."""
    cli = EngineCLI()
    built = cli.load_group(args.group, args.file, allow_symbolic=True)
    pi = PrimeSet.parse(args.pi)
    if isinstance(built, SymbolicProduct):
        report = symbolic_hall_report(built, pi)
    else:
        report = hall_report(hall_classes(built.group, pi, cli.hall_factors(built)), built.name)

    lines = [f"📊 {report.group} (order {report.group_order}), pi = {pi}: {report.status}"]
    if report.symbolic:
        lines.append(f"  symbolic: {report.base_class_count} classes in the base")
    for i, cls in enumerate(report.classes, 1):
        shape = f"vector {cls.label}" if report.symbolic else f"gens {' '.join(cls.generators) or '()'}"
        lines.append(f"  class {i}: order {cls.order}, {cls.class_size} conjugates, {shape}")
    _emit(args, "hall analyze", [report.model_dump()], "\n".join(lines))
    return EXIT_OK


def cmd_frattini(args) -> int:
    """Command to produce Frattini witnesses for normal subgroups."""
    cli = EngineCLI()
    built = cli.load_group(args.group, args.file)
    pi = PrimeSet.parse(args.pi)
    methods = ["oracle", "constructive"] if args.method == "both" else [args.method]
    G = built.group

    body, lines, violations = [], [f"🔍 {built.name} (order {G.order}), pi = {pi}"], 0
    try:
        for A in cli.normal_subgroups(built, args.normal):
            witnesses = []
            for method in methods:
                w = frattini_oracle(G, A, pi) if method == "oracle" else frattini_constructive(G, A, pi)
                witnesses.append(w)
                body.append(witness_record(w, built.name).model_dump())
                lines.append(_format_witness(w))
                if not w.checks.all_passed:
                    violations += 1
            if len({tuple(vars(w.checks).values()) for w in witnesses}) > 1:
                violations += 1
                lines.append("  ❌ oracle and constructive flags disagree")
    except NotEPiError as e:
        print(f"❌ {e}: {NOT_E_PI_HINT}", file=sys.stderr)
        return EXIT_USAGE

    _emit(args, "frattini", body, "\n".join(lines), violations=violations)
    return EXIT_VIOLATION if violations else EXIT_OK


def cmd_counterexample(args) -> int:
    """Command to reproduce the GL(3,2) counterexamples."""
    if args.which == "remark1":
        report = remark1_report()
        ok = (
            report.socle_hall_status == "E_ONLY"
            and len(report.socle_hall_classes) == 2
            and not report.h1_h2_conjugate_in_socle
            and report.subgroups_of_hall_order == 0
            and report.normalizers_inside_socle
            and report.iota_is_involution
            and report.iota_outside_socle
        )
        text = "\n".join([
            f"📐 |A| = {report.socle_order}, |G| = {report.group_order}, iota = {report.iota}",
            f"  {len(report.socle_hall_classes)} classes of {report.pi}-Hall subgroups in A "
            f"(orders {', '.join(str(c.order) for c in report.socle_hall_classes)})",
            f"  H1, H2 conjugate in A: {report.h1_h2_conjugate_in_socle}; fused in G by {report.fusing_element}",
            f"  subgroups of order 48 in G: {report.subgroups_of_hall_order} (G in E_pi: {report.group_in_E_pi})",
            f"  N_G(H) ≤ A for every Hall H of A: {report.normalizers_inside_socle}",
            f"  E_pi criterion verdict: {report.e_pi_criterion}",
        ])
    else:
        report = remark2_report()
        ok = (
            report.a_class_count == 32
            and report.orbit_count == report.burnside_count == 8
            and len(report.stable_classes) == 2
            and report.k1_k2_fused
            and not report.k1_k2_a_conjugate
        )
        text = "\n".join([
            f"📐 {report.factor_group}^{report.copies}, pi = {report.pi}",
            f"  A-classes: {report.a_class_count}; shift orbits: {report.orbit_count} (Burnside {report.burnside_count})",
            f"  stable classes: {report.stable_classes}",
            f"  K1 = {tuple(report.k1)}, K2 = {tuple(report.k2)}: fused {report.k1_k2_fused}, "
            f"A-conjugate {report.k1_k2_a_conjugate}",
            f"  verdict for K1: {report.verdicts[str(tuple(report.k1)).replace(' ', '')]}",
        ])
    _emit(args, f"counterexample {args.which}", [report.model_dump()], text, violations=0 if ok else 1)
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_corpus_run(args) -> int:
    """Command to run the property suites over the corpus."""
    manager = CorpusManager()
    results = manager.run(max_order=args.max_order, pi_policy=args.pi_policy, workers=args.workers)
    records = [r for r, _ in results]
    violations = sum(len(r.violations) for r in records)
    errors = sum(1 for r in records if r.error)

    k_seen = sorted({k for r in records for k in r.k_values})
    lines = [
        f"🧪 {len(records)} queries, {violations} violations, {errors} errors",
        f"k values exercised: {k_seen}",
        "",
        "group | order | seconds",
    ]
    timings: Dict[str, float] = {}
    for record, seconds in results:
        timings[record.group] = timings.get(record.group, 0.0) + seconds
    for record in records:
        if record.group in timings:
            lines.append(f"{record.group} | {record.order} | {timings.pop(record.group):.2f}")
    for record in records:
        for v in record.violations:
            lines.append(f"❌ {record.group} pi={record.pi}: {v}")
        if record.error:
            lines.append(f"⚠️  {record.group} pi={record.pi}: {record.error}")

    _emit(args, "corpus run", [r.model_dump() for r in records], "\n".join(lines), violations, errors)
    if violations:
        return EXIT_VIOLATION
    return EXIT_BOUND if errors else EXIT_OK


def cmd_group_info(args) -> int:
    """Command to describe a group."""
    cli = EngineCLI()
    built = cli.load_group(args.group, args.file)
    G = built.group
    base, lengths = G.chain
    info = {
        "group": built.name,
        "order": G.order,
        "degree": G.degree,
        "generators": [format_perm(g) for g in G.generators],
        "base": [b + 1 for b in base],
        "basic_orbit_lengths": list(lengths),
        "primes": primes_of(G.order),
        "solvable": is_solvable(G),
        "simple": is_simple(G),
        "minimal_normal_orders": [M.order for M in minimal_normal_subgroups(G)] if not G.is_trivial else [],
        "named_subgroups": {label: sub.order for label, sub in sorted(built.named_subgroups.items())},
    }
    text = "\n".join(f"  {key}: {value}" for key, value in info.items())
    _emit(args, "group info", [info], f"ℹ️  {built.name}\n{text}")
    return EXIT_OK


def _add_group_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--group", "-g", help="Group expression, e.g. \"SemidirectByAut(Cyclic(7), [g -> g^2])\"")
    parser.add_argument("--file", "-f", help="Path to a group file")


def _add_output_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--json", action="store_true", help="Print the machine-readable run document")
    parser.add_argument("--out", help="Write the run document to this path")


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog="hallfrattini",
        description="Hall subgroups and the Frattini argument on finite permutation groups",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Usage examples:
  %(prog)s hall analyze --group "GL(3,2)" --pi 2,3
  %(prog)s frattini --group "Sym(5)" --normal auto --pi 2,3 --method both
  %(prog)s counterexample remark1
  %(prog)s corpus run --max-order 60 --json --out results.json
  %(prog)s group info --group "PSL(2,7)"
        """,
    )
    parser.add_argument("--config", help="Path to the YAML configuration file")
    parser.add_argument("--verbose", "-v", action="store_true", help="Verbose output")
    parser.add_argument("--log-level", dest="log_level", help="Logging level (overrides the configuration)")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")

    sub = parser.add_subparsers(dest="command", parser_class=_ArgumentParser, help="Available commands")

    # hall analyze
    parser_hall = sub.add_parser("hall", help="Hall subgroup analysis")
    hall_sub = parser_hall.add_subparsers(dest="hall_command", parser_class=_ArgumentParser)
    parser_analyze = hall_sub.add_parser("analyze", help="Classes of pi-Hall subgroups and E/C status")
    _add_group_args(parser_analyze)
    parser_analyze.add_argument("--pi", default="", help="Comma-separated primes; empty for the empty set")
    _add_output_args(parser_analyze)
    parser_analyze.set_defaults(func=cmd_hall_analyze)

    # frattini
    parser_frattini = sub.add_parser("frattini", help="G-stable Hall subgroups of normal subgroups")
    _add_group_args(parser_frattini)
    parser_frattini.add_argument("--normal", default="auto", help="auto, trivial, whole, derived, a label, or cycles joined by ';'")
    parser_frattini.add_argument("--pi", default="", help="Comma-separated primes")
    parser_frattini.add_argument("--method", choices=["oracle", "constructive", "both"], default="both")
    _add_output_args(parser_frattini)
    parser_frattini.set_defaults(func=cmd_frattini)

    # counterexample
    parser_counter = sub.add_parser("counterexample", help="Reproduce the GL(3,2) counterexamples")
    parser_counter.add_argument("which", choices=["remark1", "remark2"])
    _add_output_args(parser_counter)
    parser_counter.set_defaults(func=cmd_counterexample)

    # corpus run
    parser_corpus = sub.add_parser("corpus", help="Corpus property suites")
    corpus_sub = parser_corpus.add_subparsers(dest="corpus_command", parser_class=_ArgumentParser)
    parser_run = corpus_sub.add_parser("run", help="Run all property suites over the corpus")
    parser_run.add_argument("--max-order", dest="max_order", type=int, help="Largest group order to include")
    parser_run.add_argument("--pi-policy", dest="pi_policy", choices=["all", "singletons"], help="Prime sets to test")
    parser_run.add_argument("--workers", type=int, help="Worker processes")
    _add_output_args(parser_run)
    parser_run.set_defaults(func=cmd_corpus_run)

    # group info
    parser_group = sub.add_parser("group", help="Group information")
    group_sub = parser_group.add_subparsers(dest="group_command", parser_class=_ArgumentParser)
    parser_info = group_sub.add_parser("info", help="Order, stabilizer chain and normal structure")
    _add_group_args(parser_info)
    _add_output_args(parser_info)
    parser_info.set_defaults(func=cmd_group_info)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main CLI function."""
    parser = build_parser()
    args = parser.parse_args(argv)

    if not hasattr(args, "func"):
        parser.print_help()
        return EXIT_USAGE

    try:
        settings = load_settings(args.config) if args.config else get_settings()
    except ValueError as e:
        print(f"❌ Configuration error: {e}", file=sys.stderr)
        return EXIT_USAGE
    set_settings(settings)
    level = "DEBUG" if args.verbose else (args.log_level or settings.logging.level)
    setup_logging(level, settings.logging.format)

    try:
        return args.func(args)
    except HypothesisViolation as e:
        print(f"❌ Property violation: {e}", file=sys.stderr)
        return EXIT_VIOLATION
    except BoundExceededError as e:
        print(f"⚠️  Resource bound exceeded: {e}", file=sys.stderr)
        return EXIT_BOUND
    except (ParseError, UnsupportedAtomError, InvalidAutomorphismError, ContainmentError, PreconditionError, NotEPiError) as e:
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_USAGE
    except GroupEngineError as e:
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"❌ Cannot write results: {e}", file=sys.stderr)
        return EXIT_USAGE
    except KeyboardInterrupt:
        print("\n👋 Interrupted by user")
        return 1


if __name__ == "__main__":
    sys.exit(main())
