"""
Main entry point for the filiform Einstein nilradical toolkit.

Commands:
    validate TARGET        Jacobi, nilpotency and filiform diagnostics
    catalog list           Catalog inventory
    catalog export NAME    Interchange document of a catalog algebra
    pre-einstein TARGET    Pre-Einstein derivation and eigenvalue type
    rank-profile TARGET    Tally of ad ranks over sample vectors
    en-test TARGET         Einstein-nilradical verdict with evidence
    table2                 Reproduce the classification table
    flow TARGET            Numeric soliton flow

TARGET is a path to an interchange document or a catalog name.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from src.config.settings import AppConfig
from src.models.lie_algebra import LieAlgebra, LieAlgebraError
from src.models.polynomial import MissingParameterError
from src.models.rational import RationalParsingError, format_rational, parse_rational
from src.models.verdict import InvariantViolationError, VerdictStatus
from src.parsers.algebra_parser import AlgebraParser, AlgebraParsingError
from src.parsers.polynomial_parser import PolynomialParsingError
from src.services.catalog_service import (
    CatalogParameterError,
    CatalogService,
    TemplateRangeError,
    UnknownAlgebraError,
)
from src.services.classification_service import ClassificationService
from src.services.derivation_service import (
    NoDiagonalDerivationsError,
    VerificationFailedError,
    pre_einstein,
)
from src.services.einstein_nilradical_service import EinsteinNilradicalService
from src.services.lie_structure import (
    NonNilpotentError,
    QuotientIndexError,
    UngroundedAlgebraError,
    descending_central_series,
    is_filiform,
    jacobi_residuals,
    rank_profile,
)
from src.services.report_persistence_service import ReportPersistenceService
from src.services.soliton_flow_service import FlowDivergenceError, SolitonFlowService


INPUT_ERRORS = (
    AlgebraParsingError,
    CatalogParameterError,
    FlowDivergenceError,
    LieAlgebraError,
    MissingParameterError,
    NoDiagonalDerivationsError,
    NonNilpotentError,
    PolynomialParsingError,
    QuotientIndexError,
    RationalParsingError,
    TemplateRangeError,
    UngroundedAlgebraError,
    UnknownAlgebraError,
    VerificationFailedError,
)


class CommandLineError(Exception):
    """Custom exception for invalid command line usage."""

    pass


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message: str):
        raise CommandLineError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="main.py", description="Filiform Einstein nilradical toolkit")
    commands = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    def add_target(sub: argparse.ArgumentParser) -> None:
        sub.add_argument("target", help="Interchange document path or catalog name")
        sub.add_argument(
            "--param", action="append", default=[], metavar="NAME=RATIONAL",
            help="Parameter value for parametric algebras (repeatable)",
        )

    add_target(commands.add_parser("validate", help="Jacobi, nilpotency and filiform checks"))

    catalog = commands.add_parser("catalog", help="Catalog inventory and export")
    catalog.add_argument("action", choices=["list", "export"])
    catalog.add_argument("name", nargs="?", help="Catalog name for export")
    catalog.add_argument("--param", action="append", default=[], metavar="NAME=RATIONAL")

    add_target(commands.add_parser("pre-einstein", help="Pre-Einstein derivation"))

    profile = commands.add_parser("rank-profile", help="Ranks of ad over sample vectors")
    add_target(profile)
    profile.add_argument("--index", type=int, default=0, metavar="J", help="Work in the quotient by C_J (0: the algebra itself)")

    en_test = commands.add_parser("en-test", help="Einstein-nilradical test")
    add_target(en_test)
    en_test.add_argument("--json", action="store_true", help="Print the verdict as JSON")
    en_test.add_argument("--certificate", action="store_true", help="Print roots, U and the full evidence")
    en_test.add_argument("--save", action="store_true", help="Save the verdict JSON to the output folder")

    table2 = commands.add_parser("table2", help="Reproduce the classification table")
    table2.add_argument("--save", action="store_true", help="Save the report to the output folder")

    flow = commands.add_parser("flow", help="Numeric soliton flow")
    add_target(flow)
    flow.add_argument("--max-iter", type=int, default=None)
    flow.add_argument("--step", type=float, default=None)
    flow.add_argument("--tol", type=float, default=None)
    flow.add_argument("--json", action="store_true", help="Print the report as JSON")

    return parser


def parse_params(items: Sequence[str]) -> Dict[str, str]:
    params: Dict[str, str] = {}
    for item in items:
        name, sep, value = item.partition("=")
        if not sep or not name.strip():
            raise CommandLineError(f"Expected NAME=RATIONAL, got '{item}'")
        parse_rational(value)
        params[name.strip()] = value.strip()
    return params


def load_target(
    target: str,
    params: Dict[str, str],
    catalog: CatalogService,
    parser: AlgebraParser,
    grounded: bool = True,
) -> LieAlgebra:
    """
    Catalog algebra or document, grounded with ``params``.

    With ``grounded=False`` and no parameters given, a parametric algebra
    is returned as it is.
    """
    path = Path(target)
    if path.suffix == ".json" or path.exists():
        algebra = parser.parse_file(path)
        if not params and not grounded:
            return algebra
        return algebra.ground(params) if algebra.params or params else algebra
    if not params and not grounded:
        return catalog.entry(target).algebra
    return catalog.get(target, params or None)


def _rationals(values) -> str:
    return " ".join(format_rational(v) for v in values)


def cmd_validate(args, config: AppConfig, catalog: CatalogService, parser: AlgebraParser) -> int:
    algebra = load_target(args.target, parse_params(args.param), catalog, parser, grounded=False)
    print(f"🔍 Algebra: {algebra.name or args.target} (dimension {algebra.dim})")

    residuals = jacobi_residuals(algebra)
    if residuals:
        print(f"❌ Jacobi identity fails on {len(residuals)} component(s):")
        for residual in residuals:
            print(f"  {residual}")
        return 0
    print("✅ Jacobi identity holds")
    if not algebra.is_grounded:
        print(f"➖ Parameters {list(algebra.params)} are free; pass --param to check nilpotency")
        return 0

    try:
        dims = descending_central_series(algebra)
    except NonNilpotentError as e:
        print(f"❌ Not nilpotent: {e}")
        return 0
    print(f"✅ Nilpotent, central series dimensions {tuple(dims)}")
    filiform = is_filiform(algebra)
    print(f"{'✅' if filiform else '➖'} Filiform: {'yes' if filiform else 'no'}")
    return 0


def cmd_catalog(args, config: AppConfig, catalog: CatalogService, parser: AlgebraParser) -> int:
    if args.action == "list":
        for entry in catalog.entries():
            params = ",".join(entry.algebra.params) or "-"
            print(
                f"{entry.slug:<8} {entry.display:<12} rank {entry.rank}  {entry.class_label:<7} "
                f"params {params:<6} {entry.expected.rule}"
            )
        return 0

    if not args.name:
        raise CommandLineError("catalog export needs a NAME")
    params = parse_params(args.param)
    algebra = catalog.get(args.name, params) if params else catalog.entry(args.name).algebra
    sys.stdout.write(parser.dumps(algebra))
    return 0


def cmd_pre_einstein(args, config: AppConfig, catalog: CatalogService, parser: AlgebraParser) -> int:
    algebra = load_target(args.target, parse_params(args.param), catalog, parser)
    result = pre_einstein(algebra)
    print(f"Algebra: {algebra.name or args.target}")
    print(f"Eigenvalues: {_rationals(result.eigenvalues)}")
    print(f"Simple: {'yes' if result.simple else 'no'}")
    print(f"Positive: {'yes' if result.positive else 'no'}")
    print(f"Eigenvalue type: {result.type_text or 'not positive'}")
    return 0


def cmd_rank_profile(args, config: AppConfig, catalog: CatalogService, parser: AlgebraParser) -> int:
    algebra = load_target(args.target, parse_params(args.param), catalog, parser)
    profile = rank_profile(
        algebra,
        args.index,
        random_samples=config.rank_profile_random_samples,
        seed=config.rank_profile_seed,
    )
    print(f"Algebra: {algebra.name or args.target}")
    if args.index:
        print(f"Quotient by C{args.index}")
    for rank, count in profile.items():
        print(f"rank {rank}: {count} sample(s)")
    return 0


def cmd_en_test(args, config: AppConfig, catalog: CatalogService, parser: AlgebraParser) -> int:
    algebra = load_target(args.target, parse_params(args.param), catalog, parser)
    verdict = EinsteinNilradicalService().en_test(algebra)

    if args.save:
        saved = ReportPersistenceService(config.output_folder).save_verdict(verdict)
        print(f"💾 Saved verdict to {saved}", file=sys.stderr)

    if args.json:
        print(verdict.to_json())
        return 0

    print(f"Algebra: {verdict.name or args.target}")
    print(f"Status: {verdict.status.value}")
    print(f"Eigenvalues: {_rationals(verdict.eigenvalues)}")
    if verdict.eigenvalue_type:
        print(f"Eigenvalue type: {'<'.join(str(k) for k, _ in verdict.eigenvalue_type)}")
    if verdict.status == VerdictStatus.YES:
        print(f"Witness: {_rationals(verdict.witness.vector)}")
    elif verdict.certificate is not None:
        print(f"Certificate: {verdict.certificate.describe()}")
    else:
        print(f"Reason: {verdict.reason}")

    if args.certificate:
        print("Roots: " + " ".join(f"({i},{j},{k})" for i, j, k in verdict.roots))
        if verdict.gram:
            print("U:")
            for row in verdict.gram:
                print("  " + " ".join(f"{format_rational(v):>3}" for v in row))
        if verdict.family is not None:
            print(f"Solutions of Uv = 1 ({verdict.family.free_parameters} free parameter(s)):")
            for index in range(verdict.family.dim):
                print(f"  v{index + 1} = {verdict.family.coordinate_text(index)}")
        if verdict.witness is not None and verdict.witness.parameters:
            print(f"Parameters: {_rationals(verdict.witness.parameters)}")
    return 0


def cmd_table2(args, config: AppConfig, catalog: CatalogService, parser: AlgebraParser) -> int:
    service = ClassificationService(config, catalog=catalog)
    results = service.run_table2()
    print(service.render(results))

    if args.save:
        saved = ReportPersistenceService(config.output_folder).save_table2(results, config.report_output_format)
        print(f"💾 Saved report to {saved}", file=sys.stderr)

    mismatches = [r for r in results if not r.matches]
    if mismatches:
        print(f"❌ {len(mismatches)} row(s) differ from the recorded table")
        return 2
    print(f"✅ All {len(results)} rows match")
    return 0


def cmd_flow(args, config: AppConfig, catalog: CatalogService, parser: AlgebraParser) -> int:
    algebra = load_target(args.target, parse_params(args.param), catalog, parser)
    report = SolitonFlowService(config).flow(algebra, max_iter=args.max_iter, step=args.step, tol=args.tol)
    if args.json:
        print(report.to_json())
        return 0
    print(f"Algebra: {report.name or args.target}")
    print(f"Converged: {'yes' if report.converged else 'no'} after {report.iterations} iteration(s)")
    print(f"c = {report.c:.10g}")
    print("phi = " + " ".join(f"{v:.10g}" for v in report.phi_diag))
    if report.phi_ratios is not None:
        print("phi ratios = " + " ".join(f"{v:.6f}" for v in report.phi_ratios))
    print(f"Residual: {report.residual:.3e}, derivation residual: {report.derivation_residual:.3e}")
    return 0


COMMANDS = {
    "validate": cmd_validate,
    "catalog": cmd_catalog,
    "pre-einstein": cmd_pre_einstein,
    "rank-profile": cmd_rank_profile,
    "en-test": cmd_en_test,
    "table2": cmd_table2,
    "flow": cmd_flow,
}


def run(argv: Optional[List[str]] = None, config: Optional[AppConfig] = None) -> int:
    """
    Execute one command.

    Returns:
        Exit code: 0 on success, 1 on input errors, 2 on an internal
        invariant violation or a classification mismatch
    """
    logging.basicConfig(
        level=logging.WARNING,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        handlers=[logging.StreamHandler(sys.stderr)],
    )

    try:
        args = build_parser().parse_args(argv)
        config = config or AppConfig()
        if config.debug_mode:
            logging.getLogger().setLevel(logging.DEBUG)
        return COMMANDS[args.command](args, config, CatalogService(), AlgebraParser(config))
    except CommandLineError as e:
        print(f"❌ Usage error: {e}", file=sys.stderr)
        return 1
    except InvariantViolationError as e:
        print(f"❌ Internal invariant violated: {e}", file=sys.stderr)
        return 2
    except INPUT_ERRORS as e:
        print(f"❌ {type(e).__name__}: {e}", file=sys.stderr)
        return 1
    except ValueError as e:
        print(f"❌ Invalid input: {e}", file=sys.stderr)
        return 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
