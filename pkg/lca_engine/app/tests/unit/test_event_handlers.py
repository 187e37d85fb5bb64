# app/tests/unit/test_event_handlers.py
import logging
from unittest.mock import MagicMock

import pytest

from app.domain.events import ClaimChecked
from app.infrastructure.event_handlers import LedgerRecorder


@pytest.fixture
def mock_logger():
    return MagicMock(spec=logging.Logger)


@pytest.fixture
def ledger(mock_logger):
    return LedgerRecorder(mock_logger)


def test_record_passing_claim(ledger, mock_logger):
    ledger.record_claim(ClaimChecked(claim="TC(Vir) = 0", anchor="centroids", passed=True, bounds="deg_D<=3, deg_x<=3"))
    assert len(ledger.entries) == 1
    entry = ledger.entries[0]
    assert entry.status == "PASS"
    assert entry.bounds == "deg_D<=3, deg_x<=3"
    assert not ledger.failed
    mock_logger.warning.assert_not_called()


def test_record_failing_claim(ledger, mock_logger):
    ledger.record_claim(ClaimChecked(claim="CDer(Vir) = CInn(Vir)", anchor="derivations", passed=False))
    assert ledger.entries[0].status == "FAIL"
    assert ledger.failed
    mock_logger.warning.assert_called_once()


def test_take_keeps_order_and_clears(ledger):
    for i in range(3):
        ledger.record_claim(ClaimChecked(claim=f"claim {i}", anchor="a", passed=i != 1))
    entries = ledger.take()
    assert [e.claim for e in entries] == ["claim 0", "claim 1", "claim 2"]
    assert [e.status for e in entries] == ["PASS", "FAIL", "PASS"]
    assert ledger.entries == []
    assert not ledger.failed


def test_application_wires_the_ledger(application):
    application.event_dispatcher.dispatch(ClaimChecked(claim="c", anchor="a", passed=True))
    assert [e.claim for e in application.ledger.take()] == ["c"]
