# app/domain/lie.py
"""Finite-dimensional Lie algebras given by rational structure constants."""
from dataclasses import dataclass
from itertools import combinations
from typing import List, Sequence, Tuple

from sympy.polys.domains import QQ

from app.domain import poly
from app.domain.errors import JacobiFailsError, NotAntisymmetricError, RankMismatchError, require_rank
from app.domain.linalg import QMatrix, QVector, nullspace_q, rank_q
from app.domain.poly import Rational

Constants = Tuple[Tuple[Tuple[Rational, ...], ...], ...]


@dataclass(frozen=True)
class LieAlgebra:
    dim: int
    basis_names: Tuple[str, ...]
    c: Constants

    def bracket_of(self, i: int, j: int) -> QVector:
        return self.c[i][j]

    def index(self, name: str) -> int:
        return self.basis_names.index(name)

    def vector(self, name: str) -> QVector:
        i = self.index(name)
        return tuple(QQ.one if k == i else QQ.zero for k in range(self.dim))


def _jacobi_residual(c: Constants, i: int, j: int, k: int) -> List[Rational]:
    n = len(c)
    out = [QQ.zero] * n
    # [[e_i, e_j], e_k] + [[e_j, e_k], e_i] + [[e_k, e_i], e_j]
    for a, b, d in ((i, j, k), (j, k, i), (k, i, j)):
        for m in range(n):
            coeff = c[a][b][m]
            if coeff:
                for t in range(n):
                    out[t] += coeff * c[m][d][t]
    return out


def lie_new(names: Sequence[str], constants: Sequence[Sequence[Sequence]]) -> LieAlgebra:
    n = len(names)
    if n < 1:
        raise RankMismatchError("a Lie algebra needs at least one basis element")
    if len(constants) != n or any(len(row) != n or any(len(v) != n for v in row) for row in constants):
        raise RankMismatchError(f"structure constants are not {n}x{n}x{n}")
    c: Constants = tuple(tuple(tuple(poly.to_rational(x) for x in v) for v in row) for row in constants)
    for i in range(n):
        for j in range(i, n):
            for k in range(n):
                if c[i][j][k] != -c[j][i][k]:
                    raise NotAntisymmetricError(
                        f"[{names[i]}, {names[j]}] and [{names[j]}, {names[i]}] are not opposite",
                        witness=(names[i], names[j]),
                    )
    for i, j, k in combinations(range(n), 3):
        if any(_jacobi_residual(c, i, j, k)):
            raise JacobiFailsError(
                f"Jacobi identity fails on ({names[i]}, {names[j]}, {names[k]})",
                witness=(names[i], names[j], names[k]),
            )
    return LieAlgebra(n, tuple(names), c)


def lie_bracket(g: LieAlgebra, u: Sequence[Rational], v: Sequence[Rational]) -> QVector:
    require_rank(g.dim, len(u), "vector")
    require_rank(g.dim, len(v), "vector")
    out = [QQ.zero] * g.dim
    for i, ui in enumerate(u):
        if not ui:
            continue
        for j, vj in enumerate(v):
            if not vj:
                continue
            w = ui * vj
            for k, ck in enumerate(g.c[i][j]):
                if ck:
                    out[k] += w * ck
    return tuple(out)


def lie_center(g: LieAlgebra) -> List[QVector]:
    # unknown z = sum_j z_j e_j; rows indexed by (i, k): sum_j z_j c[j][i][k] = 0
    rows = [[g.c[j][i][k] for j in range(g.dim)] for i in range(g.dim) for k in range(g.dim)]
    return nullspace_q(QMatrix.from_rows(rows, g.dim))


def lie_derived_dimension(g: LieAlgebra) -> int:
    return rank_q([g.c[i][j] for i, j in combinations(range(g.dim), 2)])


def lie_is_perfect(g: LieAlgebra) -> bool:
    return lie_derived_dimension(g) == g.dim


def _from_table(names: Sequence[str], brackets: dict) -> LieAlgebra:
    n = len(names)
    index = {name: i for i, name in enumerate(names)}
    c = [[[0] * n for _ in range(n)] for _ in range(n)]
    for (a, b), combo in brackets.items():
        for name, coeff in combo.items():
            c[index[a]][index[b]][index[name]] += coeff
            c[index[b]][index[a]][index[name]] -= coeff
    return lie_new(names, c)


def make_sl2() -> LieAlgebra:
    return _from_table(
        ("e", "f", "h"),
        {("e", "f"): {"h": 1}, ("h", "e"): {"e": 2}, ("h", "f"): {"f": -2}},
    )


def _sl3_coordinates(m: List[List[int]]) -> List[int]:
    # basis order: e12, e13, e23, f12, f13, f23, h1, h2 with h1 = E11 - E22, h2 = E22 - E33
    off = [m[0][1], m[0][2], m[1][2], m[1][0], m[2][0], m[2][1]]
    return off + [m[0][0], -m[2][2]]


def make_sl3() -> LieAlgebra:
    names = ("e12", "e13", "e23", "f12", "f13", "f23", "h1", "h2")

    def unit(i: int, j: int) -> List[List[int]]:
        m = [[0] * 3 for _ in range(3)]
        m[i][j] = 1
        return m

    def diag(a: int, b: int, d: int) -> List[List[int]]:
        return [[a, 0, 0], [0, b, 0], [0, 0, d]]

    mats = [unit(0, 1), unit(0, 2), unit(1, 2), unit(1, 0), unit(2, 0), unit(2, 1), diag(1, -1, 0), diag(0, 1, -1)]

    def commutator(x, y):
        return [[sum(x[i][k] * y[k][j] - y[i][k] * x[k][j] for k in range(3)) for j in range(3)] for i in range(3)]

    c = [[_sl3_coordinates(commutator(x, y)) for y in mats] for x in mats]
    return lie_new(names, c)


def make_abelian(n: int) -> LieAlgebra:
    names = tuple(f"a{i + 1}" for i in range(n))
    return lie_new(names, [[[0] * n for _ in range(n)] for _ in range(n)])


def make_heisenberg() -> LieAlgebra:
    return _from_table(("p", "q", "z"), {("p", "q"): {"z": 1}})
