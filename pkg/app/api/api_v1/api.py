"""
Main API router that includes all endpoint routers
"""

from fastapi import APIRouter

from app.api.api_v1.endpoints import classify, oracle, sweep, verify

api_router = APIRouter()

# Include all endpoint routers
api_router.include_router(classify.router, prefix="/classify", tags=["classify"])
api_router.include_router(verify.router, prefix="/verify", tags=["verify"])
api_router.include_router(sweep.router, prefix="/sweep", tags=["sweep"])
api_router.include_router(oracle.router, prefix="/oracle", tags=["oracle"])
