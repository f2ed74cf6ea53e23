"""
Pydantic schemas for verification reports and API responses
"""

from pydantic import BaseModel, Field, model_validator
from typing import Optional, List, Dict, Any
from enum import Enum


# Enums
class DiagramKind(str, Enum):
    FINITE = "finite"
    UNTWISTED = "untwisted-affine"
    TWISTED = "twisted-affine"


class Family(str, Enum):
    A = "A"
    B = "B"
    C = "C"
    D = "D"
    E = "E"
    F = "F"
    G = "G"


class LengthTag(str, Enum):
    SHORT = "short"
    LONG = "long"
    IMAGINARY = "imaginary"


class RootSetKind(str, Enum):
    POSITIVE = "R+(g0)"
    NILRADICAL_0 = "R(u0)"
    NILRADICAL_M = "R(um)"
    NILRADICAL_M_MINUS = "R(um-)"
    NILRADICAL_0_MINUS = "R(u0-)"
    PARABOLIC = "R(p0)"
    REAL = "R(g)"


class CaseClass(str, Enum):
    COMINUSCULE = "cominuscule"
    MINUSCULE_ONLY = "minuscule-only"
    NEITHER = "neither"


class Verdict(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    NOT_APPLICABLE = "not-applicable"


class LemmaId(str, Enum):
    ISO = "iso"
    BP = "bp"
    PHI = "phi"
    SPLIT = "split"
    WEIGHTS = "weights"
    DIMENSION = "dimension"


FAMILY_ORDER = {family: position for position, family in enumerate(Family)}
LEMMA_ORDER = {lemma: position for position, lemma in enumerate(LemmaId)}


# Case Schemas
class CaseSpec(BaseModel):
    family: Family = Field(..., description="Finite Cartan family")
    rank: int = Field(..., ge=1, description="Rank of the finite diagram")
    node: int = Field(..., ge=1, description="Node m defining the Grassmannian")
    case_class: CaseClass = Field(..., alias="class", description="Cominuscule / minuscule-only / neither")
    affine: DiagramKind = Field(..., description="Affine kind used for the checks")
    diagram: str = Field(..., description="Name of the affine diagram")

    model_config = {"populate_by_name": True, "frozen": True}

    @model_validator(mode="after")
    def _twisted_iff_minuscule_only(self):
        if self.affine == DiagramKind.FINITE:
            raise ValueError("case must select an affine kind")
        twisted = self.affine == DiagramKind.TWISTED
        if twisted != (self.case_class == CaseClass.MINUSCULE_ONLY):
            raise ValueError("twisted affine kind is reserved for minuscule-only cases")
        return self

    @property
    def sort_key(self):
        return (FAMILY_ORDER[self.family], self.rank, self.node)


class LemmaMetrics(BaseModel):
    dim_x: Optional[int] = Field(None, description="|R(u0)|")
    length_w0: int = Field(..., description="Length of w0")
    length_wm: int = Field(..., description="Length of wm")
    length_y: int = Field(..., description="Length of y = w0 wm")

    @model_validator(mode="after")
    def _lengths_add(self):
        if self.length_y != self.length_w0 + self.length_wm:
            raise ValueError("metrics must satisfy l(y) = l(w0) + l(wm)")
        return self


class CheckResult(BaseModel):
    lemma: LemmaId = Field(..., description="Lemma identifier")
    verdict: Verdict = Field(..., description="Verdict of the check")
    witness: Optional[Dict[str, Any]] = Field(None, description="Witness datum")
    metrics: Optional[LemmaMetrics] = Field(None, description="Length / dimension metrics")
    notes: List[str] = Field(default_factory=list, description="Free-form remarks")

    @model_validator(mode="after")
    def _fail_has_witness(self):
        if self.verdict == Verdict.FAIL and not self.witness:
            raise ValueError("a failing check must carry a witness")
        return self


class LemmaReport(CheckResult):
    case: CaseSpec = Field(..., description="Case the lemma was checked on")

    @property
    def sort_key(self):
        return self.case.sort_key + (LEMMA_ORDER[self.lemma],)

    def as_check(self) -> CheckResult:
        return CheckResult(**self.model_dump(exclude={"case"}, by_alias=True))


class CaseResult(BaseModel):
    case: CaseSpec = Field(..., description="Case specification")
    checks: List[CheckResult] = Field(..., description="Checks in lemma order")


class ReportSummary(BaseModel):
    passed: int = Field(0, alias="pass", description="Number of pass verdicts")
    failed: int = Field(0, alias="fail", description="Number of fail verdicts")
    not_applicable: int = Field(0, alias="not-applicable", description="Number of not-applicable verdicts")

    model_config = {"populate_by_name": True}


class ReportDocument(BaseModel):
    tool_version: str = Field(..., description="Version of the verifier")
    invocation: List[str] = Field(default_factory=list, description="Echo of the invocation")
    cases: List[CaseResult] = Field(default_factory=list, description="Per-case results")
    summary: ReportSummary = Field(default_factory=ReportSummary, description="Verdict tally")

    @model_validator(mode="after")
    def _summary_matches_tally(self):
        tally = {verdict: 0 for verdict in Verdict}
        for case in self.cases:
            for check in case.checks:
                tally[check.verdict] += 1
        counted = (self.summary.passed, self.summary.failed, self.summary.not_applicable)
        if counted != (tally[Verdict.PASS], tally[Verdict.FAIL], tally[Verdict.NOT_APPLICABLE]):
            raise ValueError("summary counts must equal the verdict tally")
        return self


# Classification Schemas
class NodeClassification(BaseModel):
    node: int = Field(..., description="Node label")
    case_class: CaseClass = Field(..., alias="class", description="Node class")
    affine: DiagramKind = Field(..., description="Affine kind selected for the node")
    diagram: str = Field(..., description="Affine diagram name")

    model_config = {"populate_by_name": True}


class ClassificationResult(BaseModel):
    family: Family = Field(..., description="Finite Cartan family")
    rank: int = Field(..., description="Rank")
    diagram: str = Field(..., description="Finite diagram name")
    untwisted: str = Field(..., description="Untwisted affine diagram name")
    twisted: Optional[str] = Field(None, description="Twisted affine diagram name, if any")
    cominuscule: List[int] = Field(..., description="Cominuscule nodes")
    minuscule: List[int] = Field(..., description="Minuscule nodes")
    nodes: List[NodeClassification] = Field(..., description="Per-node classes")


# Oracle Schemas
class OracleReport(BaseModel):
    diagram: str = Field(..., description="Finite diagram name")
    group_order: int = Field(..., description="Number of enumerated elements")
    longest_length: int = Field(..., description="Length of the longest element")
    checks: Dict[str, int] = Field(..., description="Number of agreements per check")
