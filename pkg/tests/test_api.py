from app.api.api_v1.endpoints import oracle as oracle_endpoint
from app.core.config import settings
from app.core.exceptions import OracleMismatchError

API = settings.API_V1_STR


def test_health(client):
    response = client.get("/health")
    assert response.status_code == 200
    assert response.json()["status"] == "healthy"


def test_root_lists_the_api(client):
    data = client.get("/").json()
    assert data["api"] == API
    assert data["version"] == settings.VERSION


def test_classify_type(client):
    response = client.get(f"{API}/classify/", params={"family": "D", "rank": 5})
    assert response.status_code == 200
    data = response.json()
    assert data["cominuscule"] == [1, 4, 5]
    assert data["nodes"][1]["class"] == "neither"


def test_classify_node(client):
    response = client.get(f"{API}/classify/4", params={"family": "B", "rank": 4})
    assert response.status_code == 200
    assert response.json()["class"] == "minuscule-only"
    assert response.json()["diagram"] == "D(2)_5"


def test_classify_rejects_unknown_types(client):
    response = client.get(f"{API}/classify/", params={"family": "E", "rank": 5})
    assert response.status_code == 400
    assert client.get(f"{API}/classify/", params={"family": "Q", "rank": 5}).status_code == 422


def test_verify_case(client):
    response = client.get(f"{API}/verify/", params={"family": "A", "rank": 3, "node": 2})
    assert response.status_code == 200
    data = response.json()
    assert data["summary"]["fail"] == 0
    assert [check["lemma"] for check in data["cases"][0]["checks"]] == [
        "iso",
        "bp",
        "phi",
        "split",
        "weights",
        "dimension",
    ]


def test_verify_single_lemma(client):
    params = {"family": "B", "rank": 3, "node": 2, "lemma": "iso"}
    data = client.get(f"{API}/verify/", params=params).json()
    check = data["cases"][0]["checks"][0]
    assert check["verdict"] == "fail"
    assert check["witness"]["pin"] == "2->0"
    assert data["invocation"][-2:] == ["--lemma", "iso"]


def test_verify_rejects_bad_nodes(client):
    response = client.get(f"{API}/verify/", params={"family": "A", "rank": 3, "node": 5})
    assert response.status_code == 400


def test_sweep(client):
    response = client.get(f"{API}/sweep/", params={"max_rank": 2})
    assert response.status_code == 200
    data = response.json()
    assert len(data["cases"]) == 9
    assert data["summary"]["fail"] == 0


def test_sweep_rank_is_bounded(client):
    response = client.get(f"{API}/sweep/", params={"max_rank": settings.MAX_SWEEP_RANK + 1})
    assert response.status_code == 422


def test_oracle(client):
    response = client.get(f"{API}/oracle/A3")
    assert response.status_code == 200
    data = response.json()
    assert data["group_order"] == 24
    assert data["checks"]["is_bp"] == 365


def test_oracle_rejects_other_types(client):
    assert client.get(f"{API}/oracle/A5").status_code == 400
    assert client.get(f"{API}/oracle/three").status_code == 400


def test_oracle_mismatch_is_a_server_error(client, monkeypatch):
    def broken(diagram):
        raise OracleMismatchError("longest", "A3")

    monkeypatch.setattr(oracle_endpoint, "cross_check", broken)
    response = client.get(f"{API}/oracle/A3")
    assert response.status_code == 500
    assert "longest" in response.json()["detail"]
