"""
Report service: ReportDocument assembly and text / JSON rendering
"""

from itertools import groupby
from typing import Iterable, List

import pandas as pd
from pydantic import TypeAdapter

from app.core.config import settings
from app.models.schemas import (
    CaseResult,
    ClassificationResult,
    LemmaReport,
    OracleReport,
    ReportDocument,
    ReportSummary,
    Verdict,
)

ORACLE_REPORTS = TypeAdapter(List[OracleReport])


def build_document(reports: Iterable[LemmaReport], invocation: Iterable[str] = ()) -> ReportDocument:
    """Group lemma reports by case (family, rank, node order) and tally verdicts"""
    ordered = sorted(reports, key=lambda report: report.sort_key)
    cases: List[CaseResult] = []
    for _, group in groupby(ordered, key=lambda report: report.case.sort_key):
        members = list(group)
        cases.append(CaseResult(case=members[0].case, checks=[report.as_check() for report in members]))

    tally = {verdict: 0 for verdict in Verdict}
    for report in ordered:
        tally[report.verdict] += 1
    summary = ReportSummary(
        passed=tally[Verdict.PASS],
        failed=tally[Verdict.FAIL],
        not_applicable=tally[Verdict.NOT_APPLICABLE],
    )
    return ReportDocument(
        tool_version=settings.VERSION,
        invocation=list(invocation),
        cases=cases,
        summary=summary,
    )


def has_failures(document: ReportDocument) -> bool:
    return document.summary.failed > 0


def render_json(document) -> str:
    return document.model_dump_json(by_alias=True, exclude_none=True, indent=2)


def _witness_text(witness) -> str:
    if not witness:
        return ""
    return "; ".join(f"{key}={value}" for key, value in witness.items())


def render_text(document: ReportDocument) -> str:
    """One table row per check followed by the verdict tally"""
    rows = []
    for result in document.cases:
        case = result.case
        for check in result.checks:
            metrics = check.metrics
            rows.append(
                {
                    "case": f"{case.family.value}{case.rank}",
                    "m": case.node,
                    "class": case.case_class.value,
                    "diagram": case.diagram,
                    "lemma": check.lemma.value,
                    "verdict": check.verdict.value,
                    "dim X": metrics.dim_x if metrics and metrics.dim_x is not None else "",
                    "l(w0)": metrics.length_w0 if metrics else "",
                    "l(wm)": metrics.length_wm if metrics else "",
                    "l(y)": metrics.length_y if metrics else "",
                    "witness": _witness_text(check.witness),
                }
            )
    table = pd.DataFrame(rows).to_string(index=False) if rows else "(no checks)"
    summary = document.summary
    footer = f"pass: {summary.passed}  fail: {summary.failed}  not-applicable: {summary.not_applicable}"
    return f"{table}\n\n{footer}"


def render_classification(result: ClassificationResult) -> str:
    frame = pd.DataFrame(
        [
            {"node": node.node, "class": node.case_class.value, "affine": node.affine.value, "diagram": node.diagram}
            for node in result.nodes
        ]
    )
    header = [
        f"{result.diagram}: untwisted {result.untwisted}" + (f", twisted {result.twisted}" if result.twisted else ""),
        f"cominuscule: {{{', '.join(str(node) for node in result.cominuscule)}}}",
        f"minuscule: {{{', '.join(str(node) for node in result.minuscule)}}}",
    ]
    return "\n".join(header) + "\n\n" + frame.to_string(index=False)


def render_oracle_json(reports: Iterable[OracleReport]) -> str:
    """A JSON list with one entry per checked type"""
    return ORACLE_REPORTS.dump_json(list(reports), indent=2).decode()


def render_oracle(report: OracleReport) -> str:
    frame = pd.DataFrame(
        [{"check": name, "agreements": count} for name, count in report.checks.items()]
    )
    header = f"{report.diagram}: |W| = {report.group_order}, longest length {report.longest_length}"
    agreed = sum(report.checks.values())
    return f"{header}\n\n{frame.to_string(index=False)}\n\nengine agrees on all {agreed} comparisons"
