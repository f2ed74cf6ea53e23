"""
Oracle cross-check API endpoints
"""

from fastapi import APIRouter, HTTPException, Path

from app.core.exceptions import InvariantViolation, LieEngineError
from app.lie.dynkin import build_finite
from app.lie.oracle import cross_check
from app.models.schemas import OracleReport

router = APIRouter()


@router.get("/{type_name}", response_model=OracleReport)
def oracle(type_name: str = Path(..., description="One of the oracle types, e.g. A3")):
    """Compare the matrix engine with brute-force enumeration"""
    try:
        family, rank = type_name[:1].upper(), int(type_name[1:])
    except ValueError:
        raise HTTPException(status_code=400, detail=f"malformed type name {type_name!r}")
    try:
        return cross_check(build_finite(family, rank))
    except LieEngineError as exc:
        raise HTTPException(status_code=400, detail=str(exc))
    except InvariantViolation as exc:
        raise HTTPException(status_code=500, detail=str(exc))
