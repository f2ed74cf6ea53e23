"""
Classification API endpoints
"""

from fastapi import APIRouter, HTTPException, Query

from app.core.exceptions import InvariantViolation, LieEngineError
from app.models.schemas import CaseSpec, ClassificationResult, Family
from app.services.classification_service import classify_case, classify_diagram

router = APIRouter()


@router.get("/", response_model=ClassificationResult, response_model_by_alias=True)
def classify_type(
    family: Family = Query(..., description="Finite Cartan family"),
    rank: int = Query(..., ge=1, description="Rank"),
):
    """Per-node classes and (co)minuscule node sets of a finite type"""
    try:
        return classify_diagram(family, rank)
    except LieEngineError as exc:
        raise HTTPException(status_code=400, detail=str(exc))
    except InvariantViolation as exc:
        raise HTTPException(status_code=500, detail=str(exc))


@router.get("/{node}", response_model=CaseSpec, response_model_by_alias=True)
def classify_node(
    node: int,
    family: Family = Query(..., description="Finite Cartan family"),
    rank: int = Query(..., ge=1, description="Rank"),
):
    """Case specification of a single node"""
    try:
        return classify_case(family, rank, node)
    except LieEngineError as exc:
        raise HTTPException(status_code=400, detail=str(exc))
    except InvariantViolation as exc:
        raise HTTPException(status_code=500, detail=str(exc))
