# app/infrastructure/schemas.py
from typing import Dict, List, Optional, Union

from pydantic import BaseModel, ConfigDict


class LedgerEntry(BaseModel):
    claim: str
    anchor: str
    status: str
    bounds: str = ""

    model_config = ConfigDict(from_attributes=True)


class AxiomCheckOut(BaseModel):
    command: str = "check-axioms"
    algebra: str
    rank: int
    skew: bool
    jacobi: bool
    skew_witness: Optional[List[str]] = None
    jacobi_witness: Optional[List[str]] = None
    residual: Optional[str] = None


class SolutionSpaceOut(BaseModel):
    command: str = "solve"
    algebra: str
    kind: str
    deg_d: int
    deg_x: int
    x_cap: int
    dimension: int
    inner_quotient_dimension: int
    # each map is given by the image of every generator
    basis: List[Dict[str, str]]
    tau_basis: List[Dict[str, str]] = []


class DecompositionOut(BaseModel):
    label: str
    delta: Dict[str, str]
    f_I: Dict[str, str]
    f_J: Dict[str, str]
    E: List[str]
    E_plus: List[str]
    E_minus: List[str]
    checks: Dict[str, bool]


class TripleHomOut(BaseModel):
    command: str = "triple-hom"
    map: str
    source: str
    target: str
    kinds: Dict[str, bool]
    witnesses: Dict[str, List[str]] = {}
    decomposition: Optional[DecompositionOut] = None


class ErrorOut(BaseModel):
    error: str
    detail: str
    witness: Optional[List[str]] = None


Result = Union[AxiomCheckOut, SolutionSpaceOut, TripleHomOut, ErrorOut]


class Report(BaseModel):
    schema_version: str
    tool_version: str
    input_digest: str
    command: str
    results: List[Result] = []
    ledger: List[LedgerEntry] = []
