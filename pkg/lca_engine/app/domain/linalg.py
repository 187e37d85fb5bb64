# app/domain/linalg.py
"""Exact linear algebra over QQ and over the principal ideal domain QQ[D].

Rational systems are reduced with sympy's ``DomainMatrix`` over ``QQ``; submodules of free
QQ[D]-modules are kept in a column Hermite normal form computed with Euclidean column
operations on the polynomial entries.
"""
from dataclasses import dataclass
from typing import Dict, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from app.domain import poly
from app.domain.errors import RankMismatchError, require_rank
from app.domain.module import ModElement
from app.domain.poly import Poly, Rational, Var

QVector = Tuple[Rational, ...]

# QQ[D] as a sympy domain; entries are elements of the shared polynomial ring that only use D
_PID = poly.RING.to_domain()


@dataclass(frozen=True)
class QMatrix:
    rows: int
    cols: int
    entries: Tuple[QVector, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise RankMismatchError(f"entries are not a {self.rows}x{self.cols} matrix")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: Optional[int] = None) -> "QMatrix":
        width = cols if cols is not None else (len(rows[0]) if rows else 0)
        return cls(len(rows), width, tuple(tuple(poly.to_rational(c) for c in r) for r in rows))

    @classmethod
    def from_columns(cls, columns: Sequence[Mapping[Hashable, Rational]]) -> Tuple["QMatrix", List[Hashable]]:
        """Stack sparse coefficient columns; row keys keep their first-seen order."""
        keys: Dict[Hashable, int] = {}
        for column in columns:
            for key, value in column.items():
                if value and key not in keys:
                    keys[key] = len(keys)
        dense = [[QQ.zero] * len(columns) for _ in keys]
        for j, column in enumerate(columns):
            for key, value in column.items():
                if value:
                    dense[keys[key]][j] = value
        return cls(len(keys), len(columns), tuple(tuple(r) for r in dense)), list(keys)

    def to_domain_matrix(self) -> DomainMatrix:
        dod = {}
        for i, row in enumerate(self.entries):
            nonzero = {j: c for j, c in enumerate(row) if c}
            if nonzero:
                dod[i] = nonzero
        return DomainMatrix(dod, (self.rows, self.cols), QQ)


def _rref(m: QMatrix) -> Tuple[List[List[Rational]], Tuple[int, ...]]:
    if m.rows == 0 or m.cols == 0:
        return [], ()
    reduced, pivots = m.to_domain_matrix().rref()
    if not pivots:
        return [], ()
    return reduced[:len(pivots), :].to_list(), tuple(pivots)


def nullspace_q(m: QMatrix) -> List[QVector]:
    """Basis of the right nullspace, one vector per free column of the reduced echelon form."""
    rows, pivots = _rref(m)
    pivot_set = set(pivots)
    basis = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        v = [QQ.zero] * m.cols
        v[free] = QQ.one
        for row, p in zip(rows, pivots):
            v[p] = -row[free]
        basis.append(tuple(v))
    return basis


def rref_q(vectors: Sequence[Sequence[Rational]]) -> List[QVector]:
    """Nonzero rows of the reduced row echelon form of the stacked vectors."""
    if not vectors:
        return []
    rows, _ = _rref(QMatrix.from_rows(vectors))
    return [tuple(r) for r in rows]


def rank_q(vectors: Sequence[Sequence[Rational]]) -> int:
    if not vectors:
        return 0
    return len(_rref(QMatrix.from_rows(vectors))[1])


def solve_affine_q(m: QMatrix, rhs: Sequence[Rational]) -> Optional[Tuple[QVector, List[QVector]]]:
    """Solve ``m u = rhs``; returns (particular solution, nullspace basis) or None when inconsistent."""
    if len(rhs) != m.rows:
        raise RankMismatchError(f"right-hand side has {len(rhs)} entries for {m.rows} rows")
    augmented = QMatrix(m.rows, m.cols + 1, tuple(r + (poly.to_rational(b),) for r, b in zip(m.entries, rhs)))
    rows, pivots = _rref(augmented)
    if pivots and pivots[-1] == m.cols:
        return None
    particular = [QQ.zero] * m.cols
    for row, p in zip(rows, pivots):
        particular[p] = row[m.cols]
    return tuple(particular), nullspace_q(m)


@dataclass(frozen=True)
class PolyMatrix:
    rows: int
    cols: int
    entries: Tuple[Tuple[Poly, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise RankMismatchError(f"entries are not a {self.rows}x{self.cols} matrix")
        for row in self.entries:
            for p in row:
                if not poly.uses_only(p, (Var.D,)):
                    raise ValueError(f"polynomial matrix entry {poly.render_poly(p)} uses more than D")

    @classmethod
    def from_columns(cls, rows: int, columns: Sequence[Sequence[Poly]]) -> "PolyMatrix":
        for col in columns:
            require_rank(rows, len(col), "column")
        entries = tuple(tuple(col[i] for col in columns) for i in range(rows))
        return cls(rows, len(columns), entries)

    def column(self, j: int) -> ModElement:
        return ModElement(self.rows, tuple(self.entries[i][j] for i in range(self.rows)))

    def columns(self) -> List[ModElement]:
        return [self.column(j) for j in range(self.cols)]


@dataclass(frozen=True)
class SubmoduleBasis:
    ambient_rank: int
    gens: PolyMatrix

    @property
    def size(self) -> int:
        return self.gens.cols

    @property
    def is_empty(self) -> bool:
        return self.gens.cols == 0

    def columns(self) -> List[ModElement]:
        return self.gens.columns()

    def is_full(self) -> bool:
        """True iff the submodule is the whole free module."""
        return self.size == self.ambient_rank and all(
            self.gens.entries[i][i] == poly.ONE for i in range(self.ambient_rank)
        )


def _as_columns(m: PolyMatrix) -> List[List[Poly]]:
    return [[m.entries[i][j] for i in range(m.rows)] for j in range(m.cols)]


def _combine_into(target: List[Poly], q: Poly, source: List[Poly]) -> None:
    # target -= q * source
    for k, s in enumerate(source):
        if s:
            target[k] = target[k] - q * s


def _column_echelon(columns: List[List[Poly]], pivot_rows: int) -> Tuple[List[Tuple[int, List[Poly]]], List[List[Poly]]]:
    """Lower column echelon form over the first ``pivot_rows`` rows.

    Returns the pivot columns (monic pivot, tagged with its row) and the remaining columns,
    which vanish on every pivot row. Only unimodular column operations are used.
    """
    remaining = [list(c) for c in columns if any(c)]
    pivots: List[Tuple[int, List[Poly]]] = []
    for r in range(pivot_rows):
        while True:
            active = [c for c in remaining if c[r]]
            if len(active) <= 1:
                break
            best = min(active, key=lambda c: poly.degree_in(c[r], Var.D))
            for c in active:
                if c is best:
                    continue
                q, _ = _PID.div(c[r], best[r])
                _combine_into(c, q, best)
            remaining = [c for c in remaining if any(c)]
        active = [c for c in remaining if c[r]]
        if not active:
            continue
        pivot = active[0]
        lc = pivot[r].LC
        if lc != 1:
            pivot[:] = [p.quo_ground(lc) for p in pivot]
        pivots.append((r, pivot))
        remaining = [c for c in remaining if c is not pivot]
    return pivots, remaining


def hnf(m: PolyMatrix) -> SubmoduleBasis:
    """Canonical column Hermite normal form of the QQ[D]-span of the columns of ``m``."""
    pivots, _ = _column_echelon(_as_columns(m), m.rows)
    for k, (r, pivot) in enumerate(pivots):
        for _, other in pivots[:k]:
            if other[r]:
                q, _ = _PID.div(other[r], pivot[r])
                _combine_into(other, q, pivot)
    return SubmoduleBasis(m.rows, PolyMatrix.from_columns(m.rows, [p for _, p in pivots]))


def hnf_of(rank: int, elements: Iterable[ModElement]) -> SubmoduleBasis:
    cols = []
    for v in elements:
        require_rank(rank, v.rank)
        cols.append(v.comps)
    return hnf(PolyMatrix.from_columns(rank, cols))


def member(v: ModElement, s: SubmoduleBasis) -> bool:
    """Decide membership by successive division by the pivots."""
    require_rank(s.ambient_rank, v.rank)
    rest = list(v.comps)
    for col in _as_columns(s.gens):
        r = next(i for i, p in enumerate(col) if p)
        if rest[r]:
            q, _ = _PID.div(rest[r], col[r])
            _combine_into(rest, q, col)
            if rest[r]:
                return False
    return not any(rest)


def syzygies(m: PolyMatrix) -> PolyMatrix:
    """A QQ[D]-basis of the kernel of ``m`` acting on column vectors, as columns."""
    n = m.cols
    extended = []
    for j, col in enumerate(_as_columns(m)):
        unit = [poly.ONE if k == j else poly.ZERO for k in range(n)]
        extended.append(col + unit)
    _, remaining = _column_echelon(extended, m.rows)
    kernel = [c[m.rows:] for c in remaining]
    return PolyMatrix.from_columns(n, kernel)


def intersect(s1: SubmoduleBasis, s2: SubmoduleBasis) -> SubmoduleBasis:
    require_rank(s1.ambient_rank, s2.ambient_rank, "submodule")
    rank = s1.ambient_rank
    if s1.is_empty or s2.is_empty:
        return SubmoduleBasis(rank, PolyMatrix.from_columns(rank, []))
    stacked = PolyMatrix.from_columns(rank, _as_columns(s1.gens) + _as_columns(s2.gens))
    kernel = syzygies(stacked)
    g1 = _as_columns(s1.gens)
    images = []
    for u in _as_columns(kernel):
        image = [poly.ZERO] * rank
        for coeff, col in zip(u[:s1.size], g1):
            if coeff:
                _combine_into(image, -coeff, col)
        images.append(image)
    return hnf(PolyMatrix.from_columns(rank, images))


def submodule_sum(s1: SubmoduleBasis, s2: SubmoduleBasis) -> SubmoduleBasis:
    require_rank(s1.ambient_rank, s2.ambient_rank, "submodule")
    return hnf(PolyMatrix.from_columns(s1.ambient_rank, _as_columns(s1.gens) + _as_columns(s2.gens)))


def submodule_contains(s1: SubmoduleBasis, s2: SubmoduleBasis) -> bool:
    """True iff ``s2`` is contained in ``s1``."""
    return all(member(v, s1) for v in s2.columns())


def submodule_equal(s1: SubmoduleBasis, s2: SubmoduleBasis) -> bool:
    return s1.ambient_rank == s2.ambient_rank and s1.gens == s2.gens
