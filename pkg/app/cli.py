"""
Command-line interface: classify, verify, sweep and oracle

Exit codes: 0 clean, 1 some check failed, 2 rejected request, 3 internal invariant broken.
"""

import argparse
import logging
import sys
from typing import List, Optional

from app.core.config import settings
from app.core.exceptions import InvariantViolation, LieEngineError
from app.core.logging import configure_logging
from app.lie.dynkin import affinize_twisted, affinize_untwisted, build_finite, describe, to_dot
from app.lie.oracle import cross_check
from app.models.schemas import Family, LemmaId
from app.services.classification_service import TWISTED_FAMILIES, classify_case, classify_diagram
from app.services.report_service import (
    build_document,
    has_failures,
    render_classification,
    render_json,
    render_oracle,
    render_oracle_json,
    render_text,
)
from app.services.sweep_service import run_sweep
from app.services.verification_service import VerificationService

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED_CHECK = 1
EXIT_REJECTED = 2
EXIT_INVARIANT = 3

LEMMA_CHOICES = [lemma.value for lemma in LemmaId] + ["all"]


def _emit(text: str) -> None:
    sys.stdout.write(text.rstrip("\n") + "\n")


def cmd_classify(args: argparse.Namespace) -> int:
    if args.node is not None:
        case = classify_case(args.family, args.rank, args.node)
        if args.format == "json":
            _emit(render_json(case))
        else:
            _emit(f"{case.family.value}{case.rank} node {case.node}: {case.case_class.value} on {case.diagram}")
        return EXIT_OK

    result = classify_diagram(args.family, args.rank)
    if args.format == "json":
        _emit(render_json(result))
        return EXIT_OK
    _emit(render_classification(result))
    if args.diagrams != "none":
        d = build_finite(args.family, args.rank)
        shown = [d, affinize_untwisted(d)]
        if d.family in TWISTED_FAMILIES:
            shown.append(affinize_twisted(d))
        render = describe if args.diagrams == "text" else to_dot
        _emit("\n\n".join(render(diagram) for diagram in shown))
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    case = classify_case(args.family, args.rank, args.node)
    lemmas = None if args.lemma == "all" else [LemmaId(args.lemma)]
    reports = VerificationService(case).run(lemmas)
    document = build_document(reports, args.invocation)
    _emit(render_json(document) if args.format == "json" else render_text(document))
    return EXIT_FAILED_CHECK if has_failures(document) else EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    reports = run_sweep(args.max_rank, args.workers)
    document = build_document(reports, args.invocation)
    _emit(render_json(document) if args.format == "json" else render_text(document))
    return EXIT_FAILED_CHECK if has_failures(document) else EXIT_OK


def cmd_oracle(args: argparse.Namespace) -> int:
    names = [args.type] if args.type else list(settings.ORACLE_TYPES)
    reports = []
    for name in names:
        family, rank = name[0], int(name[1:])
        reports.append(cross_check(build_finite(family, rank)))
    if args.format == "json":
        _emit(render_oracle_json(reports))
    else:
        _emit("\n\n".join(render_oracle(report) for report in reports))
    return EXIT_OK


def _add_type_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--family", required=True, choices=[family.value for family in Family])
    parser.add_argument("--rank", required=True, type=int)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument(
        "--log-level",
        type=str.upper,
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        default=None,
        help="Override LOG_LEVEL for this run",
    )
    # only the node numbering of the cominuscule tables is implemented
    common.add_argument("--labeling", choices=["standard"], default="standard", help=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(prog="verifier", description=settings.PROJECT_NAME)
    sub = parser.add_subparsers(dest="cmd", required=True)

    c = sub.add_parser("classify", parents=[common], help="Classify the nodes of a finite type")
    _add_type_arguments(c)
    c.add_argument("--node", type=int, default=None)
    c.add_argument("--diagrams", choices=["none", "text", "dot"], default="none", help="Also print the diagrams")
    c.set_defaults(func=cmd_classify)

    v = sub.add_parser("verify", parents=[common], help="Run lemma checks on one case")
    _add_type_arguments(v)
    v.add_argument("--node", type=int, required=True)
    v.add_argument("--lemma", choices=LEMMA_CHOICES, default="all")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("sweep", parents=[common], help="Verify every planned case up to a rank")
    s.add_argument("--max-rank", type=int, default=settings.MAX_SWEEP_RANK)
    s.add_argument("--workers", type=int, default=None, help="Process pool size (default SWEEP_MAX_WORKERS)")
    s.set_defaults(func=cmd_sweep)

    o = sub.add_parser("oracle", parents=[common], help="Cross-check the engine against brute force")
    o.add_argument("--type", choices=list(settings.ORACLE_TYPES), default=None)
    o.set_defaults(func=cmd_oracle)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    args.invocation = argv
    configure_logging(args.log_level)
    try:
        return args.func(args)
    except LieEngineError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_REJECTED
    except InvariantViolation as exc:
        logger.exception("internal invariant violated")
        sys.stderr.write(f"internal error: {exc}\n")
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
