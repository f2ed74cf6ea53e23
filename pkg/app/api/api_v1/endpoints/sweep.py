"""
Sweep API endpoints
"""

from fastapi import APIRouter, HTTPException, Query

from app.core.config import settings
from app.core.exceptions import InvariantViolation, LieEngineError
from app.models.schemas import ReportDocument
from app.services.report_service import build_document
from app.services.sweep_service import run_sweep

router = APIRouter()


@router.get("/", response_model=ReportDocument, response_model_by_alias=True, response_model_exclude_none=True)
def sweep(max_rank: int = Query(4, ge=1, le=settings.MAX_SWEEP_RANK, description="Largest rank swept")):
    """Verify every cominuscule and minuscule-only case up to ``max_rank`` plus negative controls"""
    try:
        reports = run_sweep(max_rank)
    except LieEngineError as exc:
        raise HTTPException(status_code=400, detail=str(exc))
    except InvariantViolation as exc:
        raise HTTPException(status_code=500, detail=str(exc))
    return build_document(reports, ["sweep", "--max-rank", str(max_rank)])
