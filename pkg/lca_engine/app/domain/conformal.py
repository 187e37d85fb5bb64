# app/domain/conformal.py
"""Lie conformal algebras on free QQ[D]-modules, stored as lambda-bracket tables on generators.

``table[i][j]`` is ``[e_i lam e_j]``, an element with coefficients in ``D`` and ``lam``. Brackets of
arbitrary elements follow from sesquilinearity: for ``a = sum p_i(D) e_i`` and ``b = sum q_j(D) e_j``
the bracket at ``t`` is ``sum p_i(-t) q_j(t + D) [e_i t e_j]``.
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, List, Optional, Sequence, Tuple

from app.domain import linalg, poly
from app.domain.entities import PASSED, CheckResult
from app.domain.errors import RankMismatchError, VariableClashError, require_rank
from app.domain.lie import LieAlgebra, lie_new
from app.domain.module import (
    ModElement,
    basis_vector,
    elem_coefficients_in,
    elem_is_zero,
    elem_substitute,
    elem_uses_only,
    elem_variables,
    scal_mul,
    zero,
)
from app.domain.poly import Poly, Var

Table = Tuple[Tuple[ModElement, ...], ...]

OUTER_VARS = (Var.LAM, Var.MU, Var.NU, Var.X, Var.Y)
# order in which bracket_at picks a free scratch parameter
_SCRATCH_ORDER = (Var.NU, Var.Y, Var.MU, Var.LAM, Var.X)

D = poly.var(Var.D)
LAM = poly.var(Var.LAM)
MU = poly.var(Var.MU)

# bracket_at memo size; algebras stay immutable, nothing is stored on them
BRACKET_CACHE_SIZE = 8192


@dataclass(frozen=True)
class ConformalAlgebra:
    rank: int
    gen_names: Tuple[str, ...]
    table: Table

    def __post_init__(self):
        if self.rank < 1 or len(self.gen_names) != self.rank:
            raise RankMismatchError(f"{len(self.gen_names)} generator names for rank {self.rank}")
        if len(self.table) != self.rank or any(len(row) != self.rank for row in self.table):
            raise RankMismatchError(f"bracket table is not {self.rank}x{self.rank}")
        for row in self.table:
            for entry in row:
                require_rank(self.rank, entry.rank, "table entry")
                if not elem_uses_only(entry, (Var.D, Var.LAM)):
                    raise ValueError("table entries may only use D and lam")

    def generator(self, i: int) -> ModElement:
        return basis_vector(self.rank, i)

    def generators(self) -> List[ModElement]:
        return [self.generator(i) for i in range(self.rank)]

    def index(self, name: str) -> int:
        return self.gen_names.index(name)


@lru_cache(maxsize=64)
def _renamed_table(table: Table, outer: Var) -> Table:
    if outer == Var.LAM:
        return table
    target = poly.var(outer)
    return tuple(tuple(elem_substitute(e, Var.LAM, target) for e in row) for row in table)


def eval_bracket(A: ConformalAlgebra, a: ModElement, b: ModElement, outer: Var = Var.LAM) -> ModElement:
    require_rank(A.rank, a.rank)
    require_rank(A.rank, b.rank)
    if outer not in OUTER_VARS:
        raise VariableClashError(f"{poly.VAR_NAMES[outer]} cannot be a bracket parameter")
    if outer in elem_variables(a) or outer in elem_variables(b):
        raise VariableClashError(f"arguments already contain {poly.VAR_NAMES[outer]}")
    table = _renamed_table(A.table, outer)
    t = poly.var(outer)
    comps = [poly.ZERO] * A.rank
    for i, p in enumerate(a.comps):
        if not p:
            continue
        p_sub = poly.substitute(p, Var.D, -t)
        for j, q in enumerate(b.comps):
            if not q:
                continue
            entry = table[i][j]
            if elem_is_zero(entry):
                continue
            factor = p_sub * poly.substitute(q, Var.D, t + D)
            for k, c in enumerate(entry.comps):
                if c:
                    comps[k] = comps[k] + factor * c
    return ModElement(A.rank, tuple(comps))


@lru_cache(maxsize=BRACKET_CACHE_SIZE)
def bracket_at(A: ConformalAlgebra, a: ModElement, b: ModElement, at: Poly) -> ModElement:
    """The bracket ``[a_t b]`` evaluated at an arbitrary polynomial ``t`` such as ``lam + mu + x``."""
    used = elem_variables(a) | elem_variables(b)
    scratch = next((v for v in _SCRATCH_ORDER if v not in used), None)
    if scratch is None:
        raise VariableClashError("no free parameter left to evaluate the bracket")
    raw = eval_bracket(A, a, b, scratch)
    return raw if at == poly.var(scratch) else elem_substitute(raw, scratch, at)


def shift_substitute(v: ModElement) -> ModElement:
    return elem_substitute(v, Var.LAM, -D - LAM)


def check_skew(A: ConformalAlgebra) -> CheckResult:
    for i in range(A.rank):
        for j in range(A.rank):
            residual = A.table[i][j] + shift_substitute(A.table[j][i])
            if not elem_is_zero(residual):
                return CheckResult(False, witness=(A.gen_names[i], A.gen_names[j]), residual=residual)
    return PASSED


def jacobi_residual(A: ConformalAlgebra, a: ModElement, b: ModElement, c: ModElement) -> ModElement:
    """``[a_lam [b_mu c]] - [[a_lam b]_{lam+mu} c] - [b_mu [a_lam c]]`` for elements free of lam and mu."""
    first = eval_bracket(A, a, eval_bracket(A, b, c, Var.MU), Var.LAM)
    second = bracket_at(A, eval_bracket(A, a, b, Var.LAM), c, LAM + MU)
    third = eval_bracket(A, b, eval_bracket(A, a, c, Var.LAM), Var.MU)
    return first - second - third


def check_jacobi(A: ConformalAlgebra) -> CheckResult:
    gens = A.generators()
    for i, a in enumerate(gens):
        for j, b in enumerate(gens):
            for k, c in enumerate(gens):
                residual = jacobi_residual(A, a, b, c)
                if not elem_is_zero(residual):
                    witness = (A.gen_names[i], A.gen_names[j], A.gen_names[k])
                    return CheckResult(False, witness=witness, residual=residual)
    return PASSED


def make_conformal(names: Sequence[str], table: Sequence[Sequence[ModElement]]) -> ConformalAlgebra:
    return ConformalAlgebra(len(names), tuple(names), tuple(tuple(row) for row in table))


def make_vir(name: str = "L") -> ConformalAlgebra:
    entry = ModElement(1, (D + 2 * LAM,))
    return make_conformal((name,), ((entry,),))


def make_cur(g: LieAlgebra) -> ConformalAlgebra:
    table = [
        [ModElement(g.dim, tuple(poly.const(ck) for ck in g.c[i][j])) for j in range(g.dim)]
        for i in range(g.dim)
    ]
    return make_conformal(g.basis_names, table)


def _embed(v: ModElement, rank: int, offset: int) -> ModElement:
    comps = [poly.ZERO] * rank
    comps[offset:offset + v.rank] = v.comps
    return ModElement(rank, tuple(comps))


def direct_sum(A: ConformalAlgebra, B: ConformalAlgebra) -> ConformalAlgebra:
    rank = A.rank + B.rank
    names = tuple(f"{n}1" for n in A.gen_names) + tuple(f"{n}2" for n in B.gen_names)
    table = [[zero(rank) for _ in range(rank)] for _ in range(rank)]
    for i in range(A.rank):
        for j in range(A.rank):
            table[i][j] = _embed(A.table[i][j], rank, 0)
    for i in range(B.rank):
        for j in range(B.rank):
            table[A.rank + i][A.rank + j] = _embed(B.table[i][j], rank, A.rank)
    return make_conformal(names, table)


def is_current(A: ConformalAlgebra) -> bool:
    return all(elem_uses_only(entry, ()) for row in A.table for entry in row)


def lie_algebra_of(A: ConformalAlgebra) -> Optional[LieAlgebra]:
    """The underlying Lie algebra of a current algebra, or None."""
    if not is_current(A):
        return None
    const = poly.coeff
    origin = (0,) * len(Var)
    c = [[[const(A.table[i][j].comps[k], origin) for k in range(A.rank)] for j in range(A.rank)] for i in range(A.rank)]
    return lie_new(A.gen_names, c)


def lambda_degree(A: ConformalAlgebra) -> int:
    return max(0, max(poly.degree_in(p, Var.LAM) for row in A.table for e in row for p in e.comps))


def table_degree(A: ConformalAlgebra) -> int:
    return max(0, max(poly.total_degree(p) for row in A.table for e in row for p in e.comps))


def lambda_coefficients(v: ModElement) -> List[ModElement]:
    return list(elem_coefficients_in(v, Var.LAM).values())


def derived_submodule(A: ConformalAlgebra) -> linalg.SubmoduleBasis:
    """QQ[D]-span of all lam-coefficients of the bracket table."""
    return linalg.hnf_of(A.rank, (w for row in A.table for e in row for w in lambda_coefficients(e)))


def is_perfect(A: ConformalAlgebra) -> bool:
    return derived_submodule(A).is_full()


def centralizer(
        A: ConformalAlgebra,
        span: Sequence[ModElement],
        against: Iterable[ModElement],
        deg_bound: int,
        logger: Optional[logging.Logger] = None,
) -> List[ModElement]:
    """Elements ``z = sum m_k(D) span_k`` (deg m_k <= deg_bound) with ``[z_lam u] = 0`` for every ``u``.

    Returns a QQ-basis of the solutions, reassembled as module elements.
    """
    logger = logger or logging.getLogger("LCA")
    against = list(against)
    if not span:
        return []
    rank = span[0].rank
    unknowns = [(k, p) for k in range(len(span)) for p in range(deg_bound + 1)]
    columns = []
    for k, p in unknowns:
        z = scal_mul(D ** p, span[k])
        column = {}
        for t, u in enumerate(against):
            value = eval_bracket(A, z, u, Var.LAM)
            for comp, c in enumerate(value.comps):
                for monom, coeff in c.items():
                    column[(t, comp, monom)] = coeff
        columns.append(column)
    matrix, _ = linalg.QMatrix.from_columns(columns)
    logger.debug("centralizer system: %d unknowns x %d equations", matrix.cols, matrix.rows)
    basis = []
    for vector in linalg.nullspace_q(matrix):
        comps = [poly.ZERO] * rank
        for (k, p), coeff in zip(unknowns, vector):
            if coeff:
                for i, c in enumerate(span[k].comps):
                    if c:
                        comps[i] = comps[i] + D ** p * c * coeff
        basis.append(ModElement(rank, tuple(comps)))
    return basis


def conformal_center(A: ConformalAlgebra, deg_bound: int, logger: Optional[logging.Logger] = None) -> List[ModElement]:
    gens = A.generators()
    return centralizer(A, gens, gens, deg_bound, logger)
