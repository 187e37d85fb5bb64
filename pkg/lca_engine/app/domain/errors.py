# app/domain/errors.py
from typing import Any, Optional, Sequence, Tuple


class LcaError(Exception):
    code: str = "LCA_ERROR"

    def __init__(self, detail: str = "", witness: Optional[Any] = None):
        self.detail = detail or self.code
        self.witness = witness
        super().__init__(self.detail)

    def __str__(self) -> str:
        return f"{self.code}: {self.detail}"


class RankMismatchError(LcaError):
    code = "RANK_MISMATCH"


class VariableClashError(LcaError):
    code = "VARIABLE_CLASH"


class NotAntisymmetricError(LcaError):
    code = "NOT_ANTISYMMETRIC"


class JacobiFailsError(LcaError):
    code = "JACOBI_FAILS"


class NotCurrentAlgebraError(LcaError):
    code = "NOT_CURRENT_ALGEBRA"


class MissingTauError(LcaError):
    code = "MISSING_TAU"


class CenterNonzeroError(LcaError):
    code = "CENTER_NONZERO"


class NoSolutionError(LcaError):
    code = "NO_SOLUTION"


class NotTripleHomError(LcaError):
    code = "NOT_TRIPLEHOM"


class NotPerfectError(LcaError):
    code = "NOT_PERFECT"


class SplitVerificationError(LcaError):
    code = "SPLIT_VERIFICATION_FAILED"


class SolverInconsistencyError(LcaError):
    code = "SOLVER_INCONSISTENT"


class UnknownNameError(LcaError):
    code = "UNKNOWN_NAME"


# raised when a command cannot run because a mathematical precondition fails
PRECONDITION_ERRORS: Tuple[type, ...] = (CenterNonzeroError, NotTripleHomError, NotPerfectError)


def require_rank(expected: int, actual: int, what: str = "element") -> None:
    if expected != actual:
        raise RankMismatchError(f"{what} has rank {actual}, expected {expected}")


def require_ranks(expected: int, actuals: Sequence[int], what: str = "element") -> None:
    for actual in actuals:
        require_rank(expected, actual, what)
