"""
Tests for the HTTP API, using FastAPI's TestClient.
"""
from fastapi.testclient import TestClient

from app.main import app
from tests.factories import P1_TEXT, P2_TEXT, P4_TEXT


def upload(text: str):
    return {"program": ("program.flp", text.encode("utf-8"), "text/plain")}


class TestSemanticsApi:
    """Test the /api/semantics endpoints"""

    def setup_method(self):
        self.client = TestClient(app)

    def test_health(self):
        """Test the health check"""
        response = self.client.get("/health")
        assert response.status_code == 200
        assert response.json() == {"status": "ok"}

    def test_well_founded(self):
        """Test the well-founded fixpoint as a structured document"""
        response = self.client.post("/api/semantics/wf", files=upload(P2_TEXT))
        assert response.status_code == 200
        document = response.json()
        assert document["kind"] == "wf"
        assert document["status"] == "converged"
        assert [(b["atom"], b["lower"], b["upper"]) for b in document["bounds"]] == [
            ("p", "3/10", "1"), ("q", "0", "7/10"), ("r", "3/10", "3/10"), ("s", "0", "0"),
        ]

    def test_ultimate_grid(self):
        """Test the ultimate Kripke-Kleene fixpoint with the grid method"""
        response = self.client.post(
            "/api/semantics/ultimate-kk", files=upload(P4_TEXT), data={"method": "grid", "grid": "1/10"}
        )
        assert response.status_code == 200
        bounds = response.json()["bounds"][0]
        assert (bounds["lower"], bounds["upper"], bounds["method"]) == ("1/2", "1", "grid")

    def test_unknown_kind(self):
        """Test an unknown fixpoint kind gives 404"""
        response = self.client.post("/api/semantics/lfp", files=upload(P1_TEXT))
        assert response.status_code == 404

    def test_stable_witness(self):
        """Test the stable-model verdict"""
        response = self.client.post("/api/semantics/stable", files=upload(P4_TEXT), data={"witness": "p=1/2"})
        assert response.status_code == 200
        assert response.json()["verdict"] is True

    def test_stable_enumeration(self):
        """Test grid enumeration"""
        response = self.client.post(
            "/api/semantics/stable", files=upload(P2_TEXT), data={"enumerate": "true", "grid": "10"}
        )
        assert response.status_code == 200
        assert len(response.json()["models"]) == 8

    def test_crosscheck(self):
        """Test all cross-checks pass on P2"""
        response = self.client.post("/api/semantics/crosscheck", files=upload(P2_TEXT), data={"samples": "10"})
        assert response.status_code == 200
        assert all(check["passed"] for check in response.json()["checks"])

    def test_strata_suggested(self):
        """Test the suggested partition is reported"""
        response = self.client.post("/api/semantics/strata", files=upload(P2_TEXT), data={"samples": "20"})
        assert response.status_code == 200
        assert response.json()["partition"] == "s|r|p,q"

    def test_strata_witness(self):
        """Test the stratum-by-stratum stable verdict"""
        response = self.client.post(
            "/api/semantics/strata", files=upload(P2_TEXT), data={"samples": "20", "witness": "p=1, q=0, r=3/10, s=0"}
        )
        assert response.status_code == 200
        assert response.json()["verdict"] is True

    def test_trace(self):
        """Test the DOT graph in the document"""
        response = self.client.post("/api/semantics/trace", files=upload(P2_TEXT))
        assert response.status_code == 200
        assert response.json()["dot"].startswith("digraph bilattice {")

    def test_check(self):
        """Test connective checks"""
        response = self.client.post("/api/semantics/check", files=upload(P1_TEXT), data={"grid": "10"})
        assert response.status_code == 200
        assert response.json()["passed"] is True

    def test_syntax_error(self):
        """Test malformed programs give 400"""
        response = self.client.post("/api/semantics/wf", files=upload("p <- "))
        assert response.status_code == 400

    def test_invalid_options(self):
        """Test rejected option combinations give 400"""
        response = self.client.post("/api/semantics/wf", files=upload(P1_TEXT), data={"epsilon": "1e-3"})
        assert response.status_code == 400
        response = self.client.post("/api/semantics/stable", files=upload(P1_TEXT))
        assert response.status_code == 400

    def test_not_utf8(self):
        """Test undecodable uploads give 400"""
        files = {"program": ("program.flp", b"\xff\xfe\xfa", "text/plain")}
        response = self.client.post("/api/semantics/wf", files=files)
        assert response.status_code == 400
