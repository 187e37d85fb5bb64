# app/domain/derivations.py
"""Derivation-like spaces of conformal linear maps and their exact bounded solver.

All defining identities are linear in the unknown map(s). The solver expands every entry as
``sum u_pq D^p x^q`` with ``p <= deg_d`` and ``q <= deg_x + lambda_degree(A)``, collects the
coefficients of the residual identities over all generator tuples, and reads the solution space
off the rational nullspace (canonical reduced echelon order, hence deterministic).
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Dict, Hashable, List, Optional, Sequence, Tuple

from sympy.polys.domains import QQ

from app.domain import linalg, poly
from app.domain.conformal import (
    ConformalAlgebra,
    bracket_at,
    conformal_center,
    lambda_degree,
    table_degree,
)
from app.domain.entities import PASSED, CheckResult, EquationKind
from app.domain.errors import (
    CenterNonzeroError,
    MissingTauError,
    NoSolutionError,
    SolverInconsistencyError,
    require_rank,
)
from app.domain.maps import (
    ConformalMap,
    ad,
    ad_two_parameter,
    apply_at,
    degrees,
    gc_bracket,
    map_scale,
    x_power_times,
    zero_map,
)
from app.domain.module import ModElement, elem_is_zero
from app.domain.poly import Rational, Var

D = poly.var(Var.D)
LAM = poly.var(Var.LAM)
MU = poly.var(Var.MU)
X = poly.var(Var.X)

Residual = Tuple[Tuple, ModElement]
# solved spaces kept per (algebra, kind, bounds)
SPACE_CACHE_SIZE = 256

# unit map coordinates: (row, column, D-power, x-power)
Unit = Tuple[int, int, int, int]


@dataclass(frozen=True)
class SolutionSpace:
    algebra: ConformalAlgebra
    kind: EquationKind
    deg_d: int
    deg_x: int
    x_cap: int
    basis: Tuple[ConformalMap, ...]
    tau_basis: Tuple[ConformalMap, ...] = ()

    @property
    def dimension(self) -> int:
        return len(self.basis)


def _on(phi: ConformalMap, a: ModElement) -> ModElement:
    return apply_at(phi, X, a)


def _nested(A: ConformalAlgebra, a: ModElement, b: ModElement, c: ModElement, first, second) -> ModElement:
    # [[a_first b]_second c]
    return bracket_at(A, bracket_at(A, a, b, first), c, second)


def _lhs(A, phi, a, b, c) -> ModElement:
    # phi_x([[a_lam b]_{lam+mu} c])
    return _on(phi, _nested(A, a, b, c, LAM, LAM + MU))


def _t1(A, phi, a, b, c) -> ModElement:
    # [[phi_x(a)_{lam+x} b]_{lam+mu+x} c]
    return _nested(A, _on(phi, a), b, c, LAM + X, LAM + MU + X)


def _t2(A, phi, a, b, c) -> ModElement:
    # [[a_lam phi_x(b)]_{lam+mu+x} c]
    return bracket_at(A, bracket_at(A, a, _on(phi, b), LAM), c, LAM + MU + X)


def _t3(A, phi, a, b, c) -> ModElement:
    # [[a_lam b]_{lam+mu} phi_x(c)]
    return bracket_at(A, bracket_at(A, a, b, LAM), _on(phi, c), LAM + MU)


def _triples(A: ConformalAlgebra):
    gens = A.generators()
    for i, j, k in product(range(A.rank), repeat=3):
        yield (i, j, k), gens[i], gens[j], gens[k]


def _cder_residuals(A: ConformalAlgebra, phi: ConformalMap) -> List[Residual]:
    gens = A.generators()
    out = []
    for i, j in product(range(A.rank), repeat=2):
        a, b = gens[i], gens[j]
        # phi_x([a_lam b]) - [phi_x(a)_{lam+x} b] - [a_lam phi_x(b)]
        value = (
            _on(phi, bracket_at(A, a, b, LAM))
            - bracket_at(A, _on(phi, a), b, LAM + X)
            - bracket_at(A, a, _on(phi, b), LAM)
        )
        out.append(((i, j), value))
    return out


def _ctder_residuals(A: ConformalAlgebra, phi: ConformalMap, tau: ConformalMap) -> List[Residual]:
    out = []
    for tag, a, b, c in _triples(A):
        value = _lhs(A, phi, a, b, c) - _t1(A, phi, a, b, c) - _t2(A, tau, a, b, c) - _t3(A, tau, a, b, c)
        out.append((tag, value))
    return out


def residuals(
        A: ConformalAlgebra,
        kind: EquationKind,
        phi: ConformalMap,
        tau: Optional[ConformalMap] = None,
) -> List[Residual]:
    """Residuals of the defining identity on every generator tuple; all zero iff phi is in the space."""
    require_rank(A.rank, phi.rank, "map")
    if kind == EquationKind.CDER:
        return _cder_residuals(A, phi)
    if kind == EquationKind.CTDER:
        return _ctder_residuals(A, phi, phi)
    if kind == EquationKind.GCTDER:
        if tau is None:
            raise MissingTauError("a generalized triple derivation needs its companion map")
        require_rank(A.rank, tau.rank, "map")
        pair = [(("pair",) + tag, v) for tag, v in _ctder_residuals(A, phi, tau)]
        companion = [(("tau",) + tag, v) for tag, v in _ctder_residuals(A, tau, tau)]
        return pair + companion
    out = []
    for tag, a, b, c in _triples(A):
        if kind == EquationKind.TC:
            out.append((tag, _lhs(A, phi, a, b, c) - _t1(A, phi, a, b, c)))
        elif kind == EquationKind.TQC:
            out.append((tag, _t1(A, phi, a, b, c) - _t3(A, phi, a, b, c)))
        elif kind == EquationKind.ZTDER:
            out.append((("lhs",) + tag, _lhs(A, phi, a, b, c)))
            out.append((("t1",) + tag, _t1(A, phi, a, b, c)))
        else:
            raise ValueError(f"{kind.value} has no defining identity")
    return out


def satisfies(
        A: ConformalAlgebra,
        phi: ConformalMap,
        kind: EquationKind,
        tau: Optional[ConformalMap] = None,
) -> CheckResult:
    if kind == EquationKind.CINN_MEMBER:
        return CheckResult(space_contains(inner_space(A, max(degrees(phi)[1], 0)), phi))
    for tag, value in residuals(A, kind, phi, tau):
        if not elem_is_zero(value):
            return CheckResult(False, witness=tag, residual=value)
    return PASSED


def _flatten(res: Sequence[Residual]) -> Dict[Hashable, Rational]:
    out = {}
    for n, (_, value) in enumerate(res):
        for comp, p in enumerate(value.comps):
            for monom, c in p.items():
                out[(n, comp, monom)] = c
    return out


def _units(rank: int, deg_d: int, x_cap: int) -> List[Unit]:
    return list(product(range(rank), range(rank), range(deg_d + 1), range(x_cap + 1)))


def _unit_map(rank: int, unit: Unit) -> ConformalMap:
    r, c, p, q = unit
    rows = [[poly.ZERO] * rank for _ in range(rank)]
    rows[r][c] = D ** p * X ** q
    return ConformalMap(rank, tuple(tuple(row) for row in rows))


def _assemble(rank: int, units: Sequence[Unit], vector: Sequence[Rational]) -> ConformalMap:
    rows = [[poly.ZERO] * rank for _ in range(rank)]
    for (r, c, p, q), coeff in zip(units, vector):
        if coeff:
            rows[r][c] = rows[r][c] + D ** p * X ** q * coeff
    return ConformalMap(rank, tuple(tuple(row) for row in rows))


def _map_key_vectors(maps: Sequence[ConformalMap]) -> Tuple[List[Tuple[Rational, ...]], List[Hashable]]:
    """Coordinates of maps over a shared list of (row, column, monomial) keys."""
    columns = [
        {(i, j, monom): c for i, row in enumerate(phi.mat) for j, p in enumerate(row) for monom, c in p.items()}
        for phi in maps
    ]
    keys: Dict[Hashable, int] = {}
    for column in columns:
        for key in column:
            keys.setdefault(key, len(keys))
    vectors = [tuple(column.get(key, QQ.zero) for key in keys) for column in columns]
    return vectors, list(keys)


def span_rank(maps: Sequence[ConformalMap]) -> int:
    vectors, _ = _map_key_vectors(maps)
    return linalg.rank_q(vectors)


def span_contains(maps: Sequence[ConformalMap], phi: ConformalMap) -> bool:
    if phi.is_zero():
        return True
    return span_rank(list(maps) + [phi]) == span_rank(maps)


def _reduced_basis(rank: int, maps: Sequence[ConformalMap]) -> Tuple[ConformalMap, ...]:
    vectors, keys = _map_key_vectors(maps)
    reduced = []
    for row in linalg.rref_q(vectors):
        mat = [[poly.ZERO] * rank for _ in range(rank)]
        for (i, j, monom), c in zip(keys, row):
            if c:
                mat[i][j] = mat[i][j] + poly.from_terms({monom: c})
        reduced.append(ConformalMap(rank, tuple(tuple(r) for r in mat)))
    return tuple(reduced)


def x_cap_for(A: ConformalAlgebra, deg_x: int) -> int:
    return deg_x + lambda_degree(A)


def solve_space(
        A: ConformalAlgebra,
        kind: EquationKind,
        deg_d: int,
        deg_x: int,
        logger: Optional[logging.Logger] = None,
        cross_check: bool = True,
) -> SolutionSpace:
    logger = logger or logging.getLogger("LCA")
    if deg_d < 0 or deg_x < 0:
        raise ValueError("degree bounds must be non-negative")
    if kind == EquationKind.CINN_MEMBER:
        return inner_space(A, deg_x)
    return _solve(A, kind, deg_d, deg_x, cross_check, logger)


def clear_space_cache() -> None:
    _solve.cache_clear()


@lru_cache(maxsize=SPACE_CACHE_SIZE)
def _solve(
        A: ConformalAlgebra,
        kind: EquationKind,
        deg_d: int,
        deg_x: int,
        cross_check: bool,
        logger: logging.Logger,
) -> SolutionSpace:
    x_cap = x_cap_for(A, deg_x)
    units = _units(A.rank, deg_d, x_cap)
    zero = zero_map(A.rank)
    unit_maps = [_unit_map(A.rank, u) for u in units]
    columns = [_flatten(residuals(A, kind, m, zero)) for m in unit_maps]
    if kind == EquationKind.GCTDER:
        columns += [_flatten(residuals(A, kind, zero, m)) for m in unit_maps]
    matrix, _ = linalg.QMatrix.from_columns(columns)
    logger.debug("%s system: %d unknowns x %d equations", kind.value, matrix.cols, matrix.rows)
    null = linalg.nullspace_q(matrix)

    tau_basis: Tuple[ConformalMap, ...] = ()
    if kind == EquationKind.GCTDER:
        n = len(units)
        pairs = [
            row for row in linalg.rref_q([tuple(v) for v in null])
            if any(row[:n])
        ]
        basis = tuple(_assemble(A.rank, units, row[:n]) for row in pairs)
        tau_basis = tuple(_assemble(A.rank, units, row[n:]) for row in pairs)
        for phi, tau in zip(basis, tau_basis):
            if not satisfies(A, phi, kind, tau):
                raise SolverInconsistencyError(f"{kind.value} solution fails its own identity")
    else:
        basis = tuple(_assemble(A.rank, units, v) for v in linalg.rref_q([tuple(v) for v in null]))
        for phi in basis:
            if not satisfies(A, phi, kind):
                raise SolverInconsistencyError(f"{kind.value} solution fails its own identity")

    space = SolutionSpace(A, kind, deg_d, deg_x, x_cap, basis, tau_basis)
    if kind == EquationKind.GCTDER and cross_check:
        _cross_check_gctder(space, logger)
    logger.info("%s space at bounds (%d, %d): dimension %d", kind.value, deg_d, deg_x, space.dimension)
    return space


def _cross_check_gctder(space: SolutionSpace, logger: logging.Logger) -> None:
    A = space.algebra
    ctder = solve_space(A, EquationKind.CTDER, space.deg_d, space.deg_x, logger)
    tc = solve_space(A, EquationKind.TC, space.deg_d, space.deg_x, logger)
    summed = list(ctder.basis) + list(tc.basis)
    joint = list(space.basis)
    if not (span_rank(summed) == span_rank(joint) == span_rank(summed + joint)):
        raise SolverInconsistencyError("joint generalized triple derivation space differs from CTDer + TC")
    for phi, tau in zip(space.basis, space.tau_basis):
        if not satisfies(A, phi - tau, EquationKind.TC):
            raise SolverInconsistencyError("phi - tau is not a triple centroid element")


def inner_space(A: ConformalAlgebra, deg_x: int) -> SolutionSpace:
    candidates = [x_power_times(m, ad(A, e)) for m in range(deg_x + 1) for e in A.generators()]
    basis = _reduced_basis(A.rank, candidates)
    deg_d = max(0, max(degrees(phi)[0] for phi in candidates)) if candidates else 0
    return SolutionSpace(A, EquationKind.CINN_MEMBER, deg_d, deg_x, x_cap_for(A, deg_x), basis)


def space_contains(S: SolutionSpace, phi: ConformalMap, logger: Optional[logging.Logger] = None) -> bool:
    logger = logger or logging.getLogger("LCA")
    require_rank(S.algebra.rank, phi.rank, "map")
    deg_d, deg_x = degrees(phi)
    if deg_d > S.deg_d or deg_x > S.x_cap:
        logger.warning("OUT_OF_BOUNDS: map degrees (%d, %d) exceed the %s space bounds", deg_d, deg_x, S.kind.value)
        return False
    return span_contains(S.basis, phi)


def space_equal(S1: SolutionSpace, S2: SolutionSpace) -> bool:
    if S1.algebra != S2.algebra:
        raise ValueError("solution spaces belong to different algebras")
    return all(span_contains(S2.basis, phi) for phi in S1.basis) and all(
        span_contains(S1.basis, phi) for phi in S2.basis
    )


def inner_quotient_dimension(S: SolutionSpace) -> int:
    inner = inner_space(S.algebra, S.deg_x).basis
    return span_rank(list(S.basis) + list(inner)) - span_rank(inner)


def _delta_system(A: ConformalAlgebra, phi: ConformalMap, deg_d: int, x_cap: int):
    units = _units(A.rank, deg_d, x_cap)
    gens = A.generators()
    pairs = list(product(range(A.rank), repeat=2))
    columns = []
    for u in units:
        m = _unit_map(A.rank, u)
        res = [(None, bracket_at(A, _on(m, gens[i]), gens[j], LAM + X)) for i, j in pairs]
        columns.append(_flatten(res))
    # phi_x([e_i lam e_j]) - [e_i lam phi_x(e_j)]
    target = _flatten([
        (None, _on(phi, A.table[i][j]) - bracket_at(A, gens[i], _on(phi, gens[j]), LAM))
        for i, j in pairs
    ])
    matrix, keys = linalg.QMatrix.from_columns(columns + [target])
    system = linalg.QMatrix(matrix.rows, len(units), tuple(row[:-1] for row in matrix.entries))
    rhs = [row[-1] for row in matrix.entries]
    return units, system, rhs


def delta_phi(
        A: ConformalAlgebra,
        phi: ConformalMap,
        logger: Optional[logging.Logger] = None,
        center_margin: int = 2,
        bound_raise: int = 2,
) -> ConformalMap:
    """The conformal derivation attached to a conformal triple derivation.

    It is the unique map with ``[delta_x(e_i)_{lam+x} e_j] = phi_x([e_i lam e_j]) - [e_i lam phi_x(e_j)]``.
    """
    logger = logger or logging.getLogger("LCA")
    require_rank(A.rank, phi.rank, "map")
    center_bound = table_degree(A) + center_margin
    if conformal_center(A, center_bound, logger):
        raise CenterNonzeroError(f"the algebra has a nonzero center (checked up to D-degree {center_bound})")
    if not satisfies(A, phi, EquationKind.CTDER):
        raise NoSolutionError("the map is not a conformal triple derivation")

    phi_d, phi_x = degrees(phi)
    deg_d = max(phi_d, 0) + table_degree(A)
    x_cap = max(phi_x, 0) + table_degree(A)
    for attempt in range(2):
        units, system, rhs = _delta_system(A, phi, deg_d, x_cap)
        logger.debug("delta system: %d unknowns x %d equations", system.cols, system.rows)
        solved = linalg.solve_affine_q(system, rhs)
        if solved is not None:
            particular, null = solved
            if null:
                raise CenterNonzeroError("the attached derivation is not unique")
            delta = _assemble(A.rank, units, particular)
            if not satisfies(A, delta, EquationKind.CDER):
                raise SolverInconsistencyError("the attached map is not a conformal derivation")
            return delta
        if attempt == 0:
            deg_d += bound_raise
            x_cap += bound_raise
            logger.warning("delta system inconsistent, raising bounds to (%d, %d)", deg_d, x_cap)
    raise NoSolutionError("no attached derivation within the degree bounds")


def lift_relation_residual(A: ConformalAlgebra, phi: ConformalMap, delta: ConformalMap) -> List[ModElement]:
    """``[phi_x ad e_i]_y - ad(delta_x(e_i))_y`` for every generator; all zero for the attached derivation."""
    out = []
    for e in A.generators():
        bracket = gc_bracket(phi, ad(A, e))
        expected = ad_two_parameter(A, _on(delta, e))
        out.extend(l - r for l, r in zip(bracket.columns(), expected.columns()))
    return out


def gc_closure_members(
        A: ConformalAlgebra,
        phi: ConformalMap,
        psi: ConformalMap,
        kind: EquationKind,
        companions: Optional[Tuple[ConformalMap, ConformalMap]] = None,
) -> bool:
    """True iff every x-coefficient of ``[phi_x psi]_y`` (renamed to one parameter) satisfies ``kind``.

    For GCTDER pass the companions ``(tau, sigma)`` of phi and psi; the bracket is then paired with
    the matching coefficient of ``[tau_x sigma]_y``.
    """
    members = gc_bracket(phi, psi).coefficient_maps()
    if kind != EquationKind.GCTDER:
        return all(satisfies(A, m, kind) for m in members.values())
    if companions is None:
        raise MissingTauError("closure of generalized triple derivations needs both companion maps")
    partners = gc_bracket(*companions).coefficient_maps()
    zero = zero_map(A.rank)
    return all(
        satisfies(A, members.get(e, zero), kind, partners.get(e, zero))
        for e in sorted(set(members) | set(partners))
    )


def gc_centralizer(maps: Sequence[ConformalMap], against: Sequence[ConformalMap]) -> List[ConformalMap]:
    """QQ-combinations of ``maps`` whose gc bracket with every map in ``against`` vanishes."""
    if not maps:
        return []
    rank = maps[0].rank
    columns = [
        _flatten([(None, v) for psi in against for v in gc_bracket(phi, psi).columns()])
        for phi in maps
    ]
    matrix, _ = linalg.QMatrix.from_columns(columns)
    out = []
    for vector in linalg.rref_q(linalg.nullspace_q(matrix)):
        total = zero_map(rank)
        for phi, c in zip(maps, vector):
            if c:
                total = total + map_scale(phi, poly.const(c))
        out.append(total)
    return out
