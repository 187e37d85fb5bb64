# app/main.py
import logging
import sys

from app.config import AppConfig
from app.domain.events import ClaimChecked
from app.infrastructure.event_dispatcher import EventDispatcher
from app.infrastructure.event_handlers import LedgerRecorder


class Application:
    def __init__(self, config: AppConfig):
        self.config = config
        self.logger = self.setup_logger()
        self.event_dispatcher = EventDispatcher(self.logger)
        self.ledger = LedgerRecorder(self.logger)

        # Register event handlers
        self.event_dispatcher.register(ClaimChecked, self.ledger.record_claim)

    def setup_logger(self):
        logger = logging.getLogger('LCA')
        logger.setLevel(self.config.LOG_LEVEL.upper())

        # stdout carries the JSON report
        c_handler = logging.StreamHandler(sys.stderr)
        formatter = logging.Formatter('%(asctime)s - %(name)s - %(levelname)s - %(message)s')
        c_handler.setFormatter(formatter)

        for handler in list(logger.handlers):
            logger.removeHandler(handler)
        logger.addHandler(c_handler)
        logger.propagate = False

        return logger


def create(config: AppConfig = None) -> Application:
    application = Application(config or AppConfig())
    application.logger.debug("Application created and configured")
    return application
