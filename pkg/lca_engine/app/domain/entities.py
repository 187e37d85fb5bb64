# app/domain/entities.py
from dataclasses import dataclass
from enum import Enum
from typing import Any, Optional


class EquationKind(str, Enum):
    CDER = "cder"
    CTDER = "ctder"
    GCTDER = "gctder"
    TC = "tc"
    TQC = "tqc"
    ZTDER = "ztder"
    CINN_MEMBER = "cinn"


class MapKind(str, Enum):
    HOM = "hom"
    ANTIHOM = "antihom"
    TRIPLEHOM = "triplehom"


class SplitLabel(str, Enum):
    HOM = "HOM"
    ANTIHOM = "ANTIHOM"
    DIRECT_SUM = "DIRECT_SUM"


@dataclass(frozen=True)
class CheckResult:
    """Outcome of an identity check; truthy iff the identity holds."""
    ok: bool
    witness: Optional[Any] = None
    residual: Optional[Any] = None
    cross_check: Optional[bool] = None

    def __bool__(self) -> bool:
        return self.ok


PASSED = CheckResult(True)
