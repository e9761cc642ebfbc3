import pytest
from fastapi.testclient import TestClient

from modalkit import holds, model_from_json, parse, proof_from_json, replay_proof
from modalkit.service import app

client = TestClient(app)


def test_health_and_logics():
    assert client.get("/health").json() == {"status": "ok"}
    assert client.get("/logics").json() == ["GL", "K", "K4", "T"]


def test_openapi_schema_builds():
    r = client.get("/openapi.json")
    assert r.status_code == 200
    paths = r.json()["paths"]
    for endpoint in ("/decide", "/countermodel", "/oracle", "/check-derivation",
                     "/correspond"):
        assert endpoint in paths


class TestDecideEndpoint:
    def test_theorem_with_replayable_proof(self):
        r = client.post("/decide", json={"logic": "K",
                                         "formula": "Box (p --> q) --> Box p --> Box q"})
        assert r.status_code == 200
        body = r.json()
        assert body["verdict"] == "theorem"
        assert replay_proof(proof_from_json(body["proof"]), "K")

    def test_non_theorem_with_checkable_countermodel(self):
        r = client.post("/decide", json={"logic": "K", "formula": "Box p --> Box Box p"})
        body = r.json()
        assert body["verdict"] == "non_theorem"
        model = model_from_json(body["countermodel"])
        assert not holds(model, parse("Box p --> Box Box p"), body["world"])

    def test_undetermined(self):
        r = client.post("/decide", json={"logic": "K4",
                                         "formula": "Box (Box p --> p) --> Box p",
                                         "max_steps": 50})
        assert r.json()["verdict"] == "undetermined"

    def test_parse_error_is_400(self):
        r = client.post("/decide", json={"logic": "K", "formula": "p -->"})
        assert r.status_code == 400
        assert "offset 5" in r.json()["detail"]

    def test_bad_logic_rejected(self):
        r = client.post("/decide", json={"logic": "S5", "formula": "p"})
        assert r.status_code == 422


class TestCountermodelEndpoint:
    def test_dot_and_json(self):
        r = client.post("/countermodel", json={"logic": "K",
                                               "formula": "Box (Box a --> Diam a)"})
        body = r.json()
        assert body["verdict"] == "non_theorem"
        assert "w0 -> w1;" in body["dot"]
        model = model_from_json(body["countermodel"])
        assert not holds(model, parse("Box (Box a --> Diam a)"), body["world"])

    def test_theorem_has_no_countermodel(self):
        r = client.post("/countermodel", json={"logic": "T",
                                               "formula": "Box (Box a --> Diam a)"})
        body = r.json()
        assert body["verdict"] == "theorem"
        assert body["countermodel"] is None


class TestOracleEndpoint:
    def test_theorem(self):
        r = client.post("/oracle", json={"logic": "T", "formula": "Box p --> p"})
        assert r.json()["verdict"] == "theorem"

    def test_non_theorem_checks(self):
        r = client.post("/oracle", json={"logic": "K", "formula": "Box p --> p"})
        body = r.json()
        assert body["verdict"] == "non_theorem"
        model = model_from_json(body["countermodel"])
        assert not holds(model, parse("Box p --> p"), body["world"])

    def test_size_limit_is_400(self):
        r = client.post("/oracle", json={
            "logic": "K",
            "formula": "p && q && r && s && t && u && v && w && x && y && z",
        })
        assert r.status_code == 400


class TestCheckDerivationEndpoint:
    def test_ok(self):
        r = client.post("/check-derivation", json={
            "logic": "K",
            "hypotheses": ["p"],
            "steps": [{"f": "p", "by": "Hypothesis"}],
        })
        assert r.json() == {"ok": True, "step": None, "reason": None}

    def test_mp_and_rn(self):
        r = client.post("/check-derivation", json={
            "logic": "K",
            "goal": "Box (p --> (q --> p))",
            "steps": [
                {"f": "Box (p --> (q --> p))", "by": "RN",
                 "sub": [{"f": "p --> (q --> p)", "by": "KAxiom"}]},
            ],
        })
        assert r.json()["ok"] is True

    def test_failure_diagnostic(self):
        r = client.post("/check-derivation", json={
            "logic": "K",
            "steps": [
                {"f": "p --> p", "by": "KAxiom"},
            ],
        })
        body = r.json()
        assert body["ok"] is False and body["step"] == 0

    def test_malformed_step_is_400(self):
        r = client.post("/check-derivation", json={
            "logic": "K",
            "steps": [{"f": "p", "by": "MP"}],
        })
        assert r.status_code == 400


class TestCorrespondEndpoint:
    @pytest.mark.parametrize("name", ["D", "T", "4", "5", "B", "GL"])
    def test_named_pairs_hold(self, name):
        r = client.post("/correspond", json={"schema": name, "max_worlds": 2})
        body = r.json()
        assert body["holds"] is True
        assert body["schema"] == name

    def test_custom_formula(self):
        r = client.post("/correspond", json={
            "formula": "Box p --> p", "properties": ["transitive"], "max_worlds": 2,
        })
        assert r.json()["holds"] is False

    def test_unknown_schema_is_400(self):
        assert client.post("/correspond", json={"schema": "X"}).status_code == 400

    def test_unknown_property_is_400(self):
        r = client.post("/correspond", json={"formula": "Box p --> p",
                                             "properties": ["dense"]})
        assert r.status_code == 400
