"""Tests for the HTTP API.

This module covers:
- Health check
- Running commands over HTTP
- Error mapping
- Rate limiting
"""

from fastapi.testclient import TestClient

from api.main import app
from config.settings import settings

# Initialize test client
client = TestClient(app)


def test_health_endpoint():
    """Test health check endpoint."""
    response = client.get("/health")
    assert response.status_code == 200
    assert response.json()["status"] == "healthy"


def test_run_endpoint():
    """Test running a command and getting its report."""
    response = client.post("/api/run", json={"argv": ["rcf", "invariant", "x^2 - 2 < 0"]})
    assert response.status_code == 200

    data = response.json()
    assert data["exit_code"] == 0
    assert data["report"] == {"dim": 1, "euler": -1}
    assert data["error"] is None


def test_run_domain_error():
    """Test that domain errors come back with exit code 1."""
    response = client.post("/api/run", json={"argv": ["acf", "theta-prime", "x < a"]})
    assert response.status_code == 200

    data = response.json()
    assert data["exit_code"] == 1
    assert data["error"]["error"] == "unsupported_shape"


def test_run_usage_error():
    """Test that a malformed command line is a bad request."""
    response = client.post("/api/run", json={"argv": ["rcf"]})
    assert response.status_code == 400
    assert response.json()["detail"]["error"] == "usage_error"


def test_serve_is_refused():
    """Test that the server cannot be started through the API."""
    response = client.post("/api/run", json={"argv": ["serve"]})
    assert response.status_code == 400


def test_rate_limiting():
    """Test API rate limiting."""
    # Make multiple requests quickly
    for _ in range(settings.rate_limit_calls + 1):
        response = client.get("/health")

    # Last request should be rate limited
    assert response.status_code == 429
