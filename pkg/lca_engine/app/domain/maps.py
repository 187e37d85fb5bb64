# app/domain/maps.py
"""Conformal linear maps as polynomial matrices in (D, x), and plain QQ[D]-module maps.

Column ``j`` of a ``ConformalMap`` is the image of the generator ``e_j``; the action on
``D^k e_j`` is ``(D + x)^k`` times that column, and the twist is applied in ``act`` only.
"""
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from app.domain import poly
from app.domain.conformal import ConformalAlgebra, eval_bracket, is_current
from app.domain.errors import NotCurrentAlgebraError, RankMismatchError, VariableClashError, require_rank
from app.domain.module import ModElement, basis_vector, elem_substitute, elem_uses_only, elem_variables
from app.domain.poly import Poly, RationalLike, Var

Matrix = Tuple[Tuple[Poly, ...], ...]

D = poly.var(Var.D)
X = poly.var(Var.X)
Y = poly.var(Var.Y)


def _check_square(rank: int, mat: Matrix) -> None:
    if len(mat) != rank or any(len(row) != rank for row in mat):
        raise RankMismatchError(f"map matrix is not {rank}x{rank}")


def _columns(mat: Matrix, rows: int, cols: int) -> List[ModElement]:
    return [ModElement(rows, tuple(mat[i][j] for i in range(rows))) for j in range(cols)]


def _from_columns(rows: int, columns: Sequence[ModElement]) -> Matrix:
    for col in columns:
        require_rank(rows, col.rank, "column")
    return tuple(tuple(col.comps[i] for col in columns) for i in range(rows))


@dataclass(frozen=True)
class ConformalMap:
    rank: int
    mat: Matrix

    def __post_init__(self):
        _check_square(self.rank, self.mat)
        for row in self.mat:
            for p in row:
                if not poly.uses_only(p, (Var.D, Var.X)):
                    raise VariableClashError("conformal map entries may only use D and x")

    @classmethod
    def from_columns(cls, columns: Sequence[ModElement]) -> "ConformalMap":
        return cls(len(columns), _from_columns(len(columns), columns))

    def column(self, j: int) -> ModElement:
        return ModElement(self.rank, tuple(self.mat[i][j] for i in range(self.rank)))

    def columns(self) -> List[ModElement]:
        return _columns(self.mat, self.rank, self.rank)

    def is_zero(self) -> bool:
        return not any(p for row in self.mat for p in row)

    def __add__(self, other: "ConformalMap") -> "ConformalMap":
        return map_add(self, other)

    def __sub__(self, other: "ConformalMap") -> "ConformalMap":
        return map_sub(self, other)


@dataclass(frozen=True)
class TwoParameterMap:
    """A gc-bracket ``[phi_x psi]_y``: matrix entries in D, x and y."""
    rank: int
    mat: Matrix

    def columns(self) -> List[ModElement]:
        return _columns(self.mat, self.rank, self.rank)

    def is_zero(self) -> bool:
        return not any(p for row in self.mat for p in row)

    def coefficient_maps(self) -> Dict[int, ConformalMap]:
        """Expand in powers of x and rename the remaining y to x."""
        grouped: Dict[int, List[List[Poly]]] = {}
        for i, row in enumerate(self.mat):
            for j, p in enumerate(row):
                for e, c in poly.coefficients_in(p, Var.X).items():
                    block = grouped.setdefault(e, [[poly.ZERO] * self.rank for _ in range(self.rank)])
                    block[i][j] = poly.substitute(c, Var.Y, X)
        return {e: ConformalMap(self.rank, tuple(tuple(r) for r in block)) for e, block in sorted(grouped.items())}


def identity_map(rank: int) -> ConformalMap:
    return ConformalMap.from_columns([basis_vector(rank, j) for j in range(rank)])


def zero_map(rank: int) -> ConformalMap:
    return ConformalMap(rank, tuple((poly.ZERO,) * rank for _ in range(rank)))


def map_add(phi: ConformalMap, psi: ConformalMap) -> ConformalMap:
    require_rank(phi.rank, psi.rank, "map")
    return ConformalMap(phi.rank, tuple(tuple(p + q for p, q in zip(r, s)) for r, s in zip(phi.mat, psi.mat)))


def map_sub(phi: ConformalMap, psi: ConformalMap) -> ConformalMap:
    require_rank(phi.rank, psi.rank, "map")
    return ConformalMap(phi.rank, tuple(tuple(p - q for p, q in zip(r, s)) for r, s in zip(phi.mat, psi.mat)))


def map_scale(phi: ConformalMap, c: Poly) -> ConformalMap:
    """Multiply every entry by ``c``, a polynomial in x (or a constant)."""
    return ConformalMap(phi.rank, tuple(tuple(p * c for p in row) for row in phi.mat))


def x_power_times(m: int, phi: ConformalMap) -> ConformalMap:
    return map_scale(phi, X ** m)


def degrees(phi: ConformalMap) -> Tuple[int, int]:
    """Largest D-degree and x-degree over all entries; (-1, -1) for the zero map."""
    entries = [p for row in phi.mat for p in row]
    return (
        max(poly.degree_in(p, Var.D) for p in entries),
        max(poly.degree_in(p, Var.X) for p in entries),
    )


def act(mat: Matrix, rank: int, at: Poly, a: ModElement) -> ModElement:
    """``phi_t(a)`` for a map matrix in (D, x): D in ``a`` becomes ``D + t`` and x in the matrix becomes ``t``."""
    comps = [poly.ZERO] * rank
    for j, p in enumerate(a.comps):
        if not p:
            continue
        shifted = poly.substitute(p, Var.D, D + at)
        for i in range(rank):
            entry = mat[i][j]
            if entry:
                if at != X:
                    entry = poly.substitute(entry, Var.X, at)
                comps[i] = comps[i] + shifted * entry
    return ModElement(rank, tuple(comps))


def apply(phi: ConformalMap, a: ModElement) -> ModElement:
    require_rank(phi.rank, a.rank)
    if Var.X in elem_variables(a):
        raise VariableClashError("element already contains x")
    return act(phi.mat, phi.rank, X, a)


def apply_at(phi: ConformalMap, at: Poly, a: ModElement) -> ModElement:
    """``phi_t(a)`` with x treated as a scalar parameter of ``a``."""
    require_rank(phi.rank, a.rank)
    return act(phi.mat, phi.rank, at, a)


def ad(A: ConformalAlgebra, a: ModElement) -> ConformalMap:
    require_rank(A.rank, a.rank)
    if not elem_uses_only(a, (Var.D,)):
        raise VariableClashError("ad needs an element in D only")
    return ConformalMap.from_columns([eval_bracket(A, a, e, Var.X) for e in A.generators()])


def ad_two_parameter(A: ConformalAlgebra, a: ModElement) -> TwoParameterMap:
    """``ad a`` with bracket parameter y, for elements that may already carry x."""
    require_rank(A.rank, a.rank)
    cols = [eval_bracket(A, a, e, Var.Y) for e in A.generators()]
    return TwoParameterMap(A.rank, _from_columns(A.rank, cols))


def gc_bracket(phi: ConformalMap, psi: ConformalMap) -> TwoParameterMap:
    """``[phi_x psi]_y e_j = phi_x(psi_{y-x} e_j) - psi_{y-x}(phi_x e_j)``."""
    require_rank(phi.rank, psi.rank, "map")
    rank = phi.rank
    shift = Y - X
    cols = []
    for j in range(rank):
        psi_col = elem_substitute(psi.column(j), Var.X, shift)
        left = act(phi.mat, rank, X, psi_col)
        right = act(psi.mat, rank, shift, phi.column(j))
        cols.append(left - right)
    return TwoParameterMap(rank, _from_columns(rank, cols))


def dl_map(A: ConformalAlgebra) -> ConformalMap:
    if not is_current(A):
        raise NotCurrentAlgebraError("d^L is only defined on current algebras")
    return map_scale(identity_map(A.rank), D + X)


@dataclass(frozen=True)
class ModuleMap:
    out_rank: int
    in_rank: int
    mat: Matrix

    def __post_init__(self):
        if len(self.mat) != self.out_rank or any(len(row) != self.in_rank for row in self.mat):
            raise RankMismatchError(f"module map matrix is not {self.out_rank}x{self.in_rank}")
        for row in self.mat:
            for p in row:
                if not poly.uses_only(p, (Var.D,)):
                    raise VariableClashError("module map entries may only use D")

    @classmethod
    def from_columns(cls, out_rank: int, columns: Sequence[ModElement]) -> "ModuleMap":
        return cls(out_rank, len(columns), _from_columns(out_rank, columns))

    def column(self, j: int) -> ModElement:
        return ModElement(self.out_rank, tuple(self.mat[i][j] for i in range(self.out_rank)))

    def is_zero(self) -> bool:
        return not any(p for row in self.mat for p in row)


def modmap_columns(f: ModuleMap) -> List[ModElement]:
    return _columns(f.mat, f.out_rank, f.in_rank)


def modmap_apply(f: ModuleMap, a: ModElement) -> ModElement:
    require_rank(f.in_rank, a.rank)
    comps = [poly.ZERO] * f.out_rank
    for j, p in enumerate(a.comps):
        if not p:
            continue
        for i in range(f.out_rank):
            entry = f.mat[i][j]
            if entry:
                comps[i] = comps[i] + entry * p
    return ModElement(f.out_rank, tuple(comps))


def _require_shape(f: ModuleMap, g: ModuleMap) -> None:
    if (f.out_rank, f.in_rank) != (g.out_rank, g.in_rank):
        raise RankMismatchError("module maps have different shapes")


def modmap_add(f: ModuleMap, g: ModuleMap) -> ModuleMap:
    _require_shape(f, g)
    return ModuleMap(f.out_rank, f.in_rank, tuple(tuple(p + q for p, q in zip(r, s)) for r, s in zip(f.mat, g.mat)))


def modmap_sub(f: ModuleMap, g: ModuleMap) -> ModuleMap:
    _require_shape(f, g)
    return ModuleMap(f.out_rank, f.in_rank, tuple(tuple(p - q for p, q in zip(r, s)) for r, s in zip(f.mat, g.mat)))


def modmap_scale(f: ModuleMap, c: RationalLike) -> ModuleMap:
    c = poly.to_rational(c)
    return ModuleMap(f.out_rank, f.in_rank, tuple(tuple(p * c for p in row) for row in f.mat))


def modmap_identity(rank: int) -> ModuleMap:
    return ModuleMap.from_columns(rank, [basis_vector(rank, j) for j in range(rank)])
