# app/infrastructure/event_handlers.py
import logging
from typing import List

from app.domain.events import ClaimChecked
from app.infrastructure import schemas


class LedgerRecorder:
    """Collects checked claims in emission order."""

    def __init__(self, logger: logging.Logger):
        self.logger = logger
        self.entries: List[schemas.LedgerEntry] = []

    def record_claim(self, event: ClaimChecked):
        entry = schemas.LedgerEntry(
            claim=event.claim,
            anchor=event.anchor,
            status="PASS" if event.passed else "FAIL",
            bounds=event.bounds,
        )
        if not event.passed:
            self.logger.warning("claim failed: %s (%s)", event.claim, event.bounds or "no bounds")
        self.entries.append(entry)

    def take(self) -> List[schemas.LedgerEntry]:
        entries, self.entries = self.entries, []
        return entries

    @property
    def failed(self) -> bool:
        return any(entry.status == "FAIL" for entry in self.entries)
