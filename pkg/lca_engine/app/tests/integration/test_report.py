# app/tests/integration/test_report.py
import json

import pytest

from app.api import cli, dependencies
from app.infrastructure.dsl_parser import load

VIR_ONLY = """
confalg Vir {
  generators L;
  bracket [L ~ L] = (D + 2*lam) L;
}
"""

CURRENT_PAIR = """
liealg sl2 {
  basis e, f, h;
  [e, f] = h;
  [h, e] = 2 e;
  [h, f] = -2 f;
}
confalg C = cur(sl2);
confalg CC = C (+) C;
"""

BROKEN = """
confalg B {
  generators L;
  bracket [L ~ L] = (D + 2*lam)^3 L;
}
"""


@pytest.fixture
def small_bounds(monkeypatch):
    monkeypatch.setenv("LCA_REPORT_VIR_DEG_D", "2")
    monkeypatch.setenv("LCA_REPORT_VIR_DEG_X", "2")
    monkeypatch.setenv("LCA_REPORT_CUR_DEG_D", "1")
    monkeypatch.setenv("LCA_REPORT_CUR_DEG_X", "1")


def report_of(capsys, path):
    code = cli.main(["report", str(path)])
    return code, json.loads(capsys.readouterr().out)


def test_empty_file_has_an_empty_ledger(capsys, lca_file):
    code, report = report_of(capsys, lca_file("# nothing\n"))
    assert code == cli.EXIT_OK
    assert report["ledger"] == []
    assert report["results"] == []


def test_virasoro_ledger(capsys, lca_file, small_bounds):
    code, report = report_of(capsys, lca_file(VIR_ONLY))
    assert code == cli.EXIT_OK
    ledger = report["ledger"]
    assert ledger
    assert all(entry["status"] == "PASS" for entry in ledger)
    assert ledger[0]["claim"] == "Vir satisfies skew-symmetry and the Jacobi identity"
    claims = [entry["claim"] for entry in ledger]
    assert "tc(Vir) = 0" in claims
    assert "every triple derivation of Vir is its own attached derivation" in claims
    assert "brackets of gctder(Vir) pairs stay in gctder(Vir)" in claims
    assert "ztder(Vir) is an ideal of ctder(Vir) and gctder(Vir)" in claims
    assert all(entry["anchor"] for entry in ledger)


def test_broken_algebra_fails_its_claim(capsys, lca_file):
    code, report = report_of(capsys, lca_file(BROKEN))
    assert code == cli.EXIT_VERIFICATION
    [entry] = report["ledger"]
    assert entry["status"] == "FAIL"
    assert report["results"][0]["jacobi"] is False


def test_ledger_order_is_stable(small_bounds, application, lca_file):
    path = lca_file(VIR_ONLY)
    gateway = dependencies.get_source_gateway(application)
    source = gateway.load(str(path))
    interactor = dependencies.get_report_interactor(application, gateway)
    interactor.run(source)
    first = [e.claim for e in application.ledger.take()]
    interactor.run(load(path.read_text(encoding="utf-8")))
    second = [e.claim for e in application.ledger.take()]
    assert first == second


def test_solver_claims_respect_the_rank_limit(capsys, lca_file, monkeypatch):
    monkeypatch.setenv("LCA_REPORT_MAX_SOLVER_RANK", "2")
    code, report = report_of(capsys, lca_file(CURRENT_PAIR))
    assert code == cli.EXIT_OK
    assert [e["claim"] for e in report["ledger"]] == [
        "C satisfies skew-symmetry and the Jacobi identity",
        "CC satisfies skew-symmetry and the Jacobi identity",
    ]


@pytest.mark.slow
def test_current_ledger_rejects_dl_by_span(capsys, lca_file, small_bounds, monkeypatch):
    monkeypatch.setenv("LCA_REPORT_CUR_DEG_D", "0")
    _, report = report_of(capsys, lca_file(CURRENT_PAIR))
    statuses = {entry["claim"]: entry["status"] for entry in report["ledger"]}
    assert statuses["d^L is not inner in C"] == "PASS"
    assert statuses["ztder(C) is an ideal of ctder(C) and gctder(C)"] == "PASS"


@pytest.mark.slow
def test_sample_report_passes(capsys, sample_path):
    code, report = report_of(capsys, sample_path)
    assert code == cli.EXIT_OK
    failed = [entry["claim"] for entry in report["ledger"] if entry["status"] != "PASS"]
    assert failed == []
    anchors = {entry["anchor"] for entry in report["ledger"]}
    assert "derivations of a current algebra" in anchors
    assert "triple homomorphisms into centerless targets split" in anchors
    assert [r["algebra"] for r in report["results"]] == ["Vir", "C", "CC"]
