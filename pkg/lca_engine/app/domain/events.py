# app/domain/events.py
from pydantic import BaseModel


class Event(BaseModel):
    pass


class ClaimChecked(Event):
    claim: str
    anchor: str
    passed: bool
    bounds: str = ""
