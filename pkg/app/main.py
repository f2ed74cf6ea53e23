"""
Cominuscule Compactification Verifier - Main FastAPI Application
"""

import uvicorn
from fastapi import FastAPI

from app.api.api_v1.api import api_router
from app.core.config import settings
from app.core.logging import configure_logging

configure_logging()

# Create FastAPI application
app = FastAPI(
    title=settings.PROJECT_NAME,
    version=settings.VERSION,
    description="Root systems, Weyl groups and lemma checks for cominuscule Grassmannians",
    openapi_url=f"{settings.API_V1_STR}/openapi.json",
)

# Include API router
app.include_router(api_router, prefix=settings.API_V1_STR)


@app.get("/")
def root():
    """Root endpoint with API information"""
    return {
        "message": settings.PROJECT_NAME,
        "version": settings.VERSION,
        "docs": "/docs",
        "api": settings.API_V1_STR,
    }


@app.get("/health")
def health_check():
    """Health check endpoint"""
    return {"status": "healthy", "service": "cominuscule-verifier"}


if __name__ == "__main__":
    uvicorn.run(
        "app.main:app",
        host="0.0.0.0",
        port=8000,
        reload=True
    )
