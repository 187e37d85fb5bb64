# app/infrastructure/event_dispatcher.py
"""Routes checked claims to the ledger.

Handlers are keyed by event class, so a subclass of ClaimChecked is not
picked up by handlers of its parent.
"""
import logging
from collections import defaultdict
from typing import Callable, DefaultDict, List, Optional, Type

from app.domain.events import Event

Handler = Callable[[Event], None]


class EventDispatcher:
    def __init__(self, logger: Optional[logging.Logger] = None):
        self.logger = logger or logging.getLogger("LCA")
        self.handlers: DefaultDict[Type[Event], List[Handler]] = defaultdict(list)

    def register(self, event_type: Type[Event], handler: Handler) -> None:
        if not (isinstance(event_type, type) and issubclass(event_type, Event)):
            raise TypeError(f"handlers attach to Event subclasses, got {event_type!r}")
        self.handlers[event_type].append(handler)

    def dispatch(self, event: Event) -> int:
        """Run the handlers of ``type(event)`` in registration order; returns how many ran."""
        handlers = self.handlers.get(type(event), [])
        if not handlers:
            self.logger.debug("No ledger handler for %s", type(event).__name__)
        for handler in handlers:
            handler(event)
        return len(handlers)
