"""
Lemma verification API endpoints
"""

from typing import Optional

from fastapi import APIRouter, HTTPException, Query

from app.core.exceptions import InvariantViolation, LieEngineError
from app.models.schemas import Family, LemmaId, ReportDocument
from app.services.classification_service import classify_case
from app.services.report_service import build_document
from app.services.verification_service import VerificationService

router = APIRouter()


@router.get("/", response_model=ReportDocument, response_model_by_alias=True, response_model_exclude_none=True)
def verify_case(
    family: Family = Query(..., description="Finite Cartan family"),
    rank: int = Query(..., ge=1, description="Rank"),
    node: int = Query(..., ge=1, description="Node m"),
    lemma: Optional[LemmaId] = Query(None, description="Single lemma to check (all when omitted)"),
):
    """Run the lemma checks of one (family, rank, node) case"""
    try:
        case = classify_case(family, rank, node)
        reports = VerificationService(case).run([lemma] if lemma else None)
    except LieEngineError as exc:
        raise HTTPException(status_code=400, detail=str(exc))
    except InvariantViolation as exc:
        raise HTTPException(status_code=500, detail=str(exc))
    invocation = ["verify", "--family", family.value, "--rank", str(rank), "--node", str(node)]
    if lemma:
        invocation += ["--lemma", lemma.value]
    return build_document(reports, invocation)
