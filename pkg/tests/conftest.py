"""
Shared fixtures for the verifier test-suite
"""

import pytest
from fastapi.testclient import TestClient

from app.lie.dynkin import affinize_twisted, affinize_untwisted, build_finite
from app.main import app


@pytest.fixture
def client():
    return TestClient(app)


@pytest.fixture
def a2():
    return build_finite("A", 2)


@pytest.fixture
def a3():
    return build_finite("A", 3)


@pytest.fixture
def affine_a2(a2):
    return affinize_untwisted(a2)


@pytest.fixture
def affine_a3(a3):
    return affinize_untwisted(a3)


@pytest.fixture
def twisted_c2():
    """A(2)_3 built from C2"""
    return affinize_twisted(build_finite("C", 2))
