# app/domain/triple_hom.py
"""Homomorphisms, anti-homomorphisms and triple homomorphisms between conformal algebras.

A triple homomorphism ``f`` whose enveloping subalgebra ``E`` is centerless splits as
``f = f_I + f_J`` with ``f_I = (f + delta_f) / 2`` a homomorphism and ``f_J = (f - delta_f) / 2``
an anti-homomorphism, where ``delta_f`` is the homomorphism attached to ``f``.
"""
import logging
from dataclasses import dataclass
from itertools import product
from typing import Dict, Hashable, List, Optional, Tuple

from app.domain import linalg, poly
from app.domain.conformal import (
    ConformalAlgebra,
    bracket_at,
    centralizer,
    eval_bracket,
    is_perfect,
    lambda_coefficients,
    table_degree,
)
from app.domain.entities import CheckResult, MapKind, SplitLabel
from app.domain.errors import (
    CenterNonzeroError,
    NoSolutionError,
    NotPerfectError,
    NotTripleHomError,
    RankMismatchError,
    SplitVerificationError,
)
from app.domain.linalg import SubmoduleBasis
from app.domain.maps import ModuleMap, modmap_add, modmap_apply, modmap_columns, modmap_scale, modmap_sub
from app.domain.module import ModElement, elem_is_zero, scal_mul
from app.domain.poly import Rational, Var

D = poly.var(Var.D)
LAM = poly.var(Var.LAM)
MU = poly.var(Var.MU)


@dataclass(frozen=True)
class Decomposition:
    f_I: ModuleMap
    f_J: ModuleMap
    E: SubmoduleBasis
    E_plus: SubmoduleBasis
    E_minus: SubmoduleBasis
    delta: ModuleMap
    label: SplitLabel
    checks: Tuple[Tuple[str, bool], ...] = ()


def _require_shape(A: ConformalAlgebra, B: ConformalAlgebra, f: ModuleMap) -> None:
    if f.in_rank != A.rank or f.out_rank != B.rank:
        raise RankMismatchError(
            f"map is {f.out_rank}x{f.in_rank}, algebras have ranks {A.rank} -> {B.rank}"
        )


def _pair_residual(A, B, f, a, b, sign) -> ModElement:
    image = modmap_apply(f, eval_bracket(A, a, b, Var.LAM))
    bracket = eval_bracket(B, modmap_apply(f, a), modmap_apply(f, b), Var.LAM)
    return image - bracket if sign > 0 else image + bracket


def _triple_residual(A, B, f, a, b, c) -> ModElement:
    # f([a_lam [b_mu c]]) - [f(a)_lam [f(b)_mu f(c)]]
    fa, fb, fc = (modmap_apply(f, v) for v in (a, b, c))
    image = modmap_apply(f, eval_bracket(A, a, eval_bracket(A, b, c, Var.MU), Var.LAM))
    return image - eval_bracket(B, fa, eval_bracket(B, fb, fc, Var.MU), Var.LAM)


def _nested_residual(A, B, f, a, b, c) -> ModElement:
    # f([[a_lam b]_{lam+mu} c]) - [[f(a)_lam f(b)]_{lam+mu} f(c)]
    fa, fb, fc = (modmap_apply(f, v) for v in (a, b, c))
    image = modmap_apply(f, bracket_at(A, eval_bracket(A, a, b, Var.LAM), c, LAM + MU))
    return image - bracket_at(B, eval_bracket(B, fa, fb, Var.LAM), fc, LAM + MU)


def modmap_kind(
        A: ConformalAlgebra,
        B: ConformalAlgebra,
        f: ModuleMap,
        kind: MapKind,
        logger: Optional[logging.Logger] = None,
) -> CheckResult:
    logger = logger or logging.getLogger("LCA")
    _require_shape(A, B, f)
    gens = A.generators()
    names = A.gen_names
    if kind in (MapKind.HOM, MapKind.ANTIHOM):
        sign = 1 if kind == MapKind.HOM else -1
        for i, j in product(range(A.rank), repeat=2):
            residual = _pair_residual(A, B, f, gens[i], gens[j], sign)
            if not elem_is_zero(residual):
                return CheckResult(False, witness=(names[i], names[j]), residual=residual)
        return CheckResult(True)

    failure = None
    nested_ok = True
    for i, j, k in product(range(A.rank), repeat=3):
        a, b, c = gens[i], gens[j], gens[k]
        if failure is None:
            residual = _triple_residual(A, B, f, a, b, c)
            if not elem_is_zero(residual):
                failure = ((names[i], names[j], names[k]), residual)
        if nested_ok and not elem_is_zero(_nested_residual(A, B, f, a, b, c)):
            nested_ok = False
    ok = failure is None
    if ok != nested_ok:
        logger.warning("triple homomorphism forms disagree: direct %s, nested %s", ok, nested_ok)
    if ok:
        return CheckResult(True, cross_check=nested_ok)
    return CheckResult(False, witness=failure[0], residual=failure[1], cross_check=nested_ok)


def enveloping(
        B: ConformalAlgebra,
        f: ModuleMap,
        max_rounds: int = 32,
        logger: Optional[logging.Logger] = None,
) -> SubmoduleBasis:
    """Smallest subalgebra of ``B`` containing the image of ``f``, by bracket closure."""
    logger = logger or logging.getLogger("LCA")
    current = linalg.hnf_of(B.rank, modmap_columns(f))
    for rounds in range(1, max_rounds + 1):
        cols = current.columns()
        products = [w for u in cols for v in cols for w in lambda_coefficients(eval_bracket(B, u, v, Var.LAM))]
        closed = linalg.hnf_of(B.rank, cols + products)
        if linalg.submodule_equal(closed, current):
            logger.info("enveloping subalgebra closed after %d round(s), %d generator(s)", rounds, closed.size)
            return closed
        current = closed
    raise NoSolutionError(f"bracket closure did not stabilize within {max_rounds} rounds")


def center_check(B: ConformalAlgebra, E: SubmoduleBasis, deg_bound: int, logger: Optional[logging.Logger] = None) -> bool:
    """True iff ``E`` has no nonzero central element up to the multiplier degree bound."""
    if E.is_empty:
        return True
    cols = E.columns()
    return not centralizer(B, cols, cols, deg_bound, logger)


def _map_degree(f: ModuleMap) -> int:
    return max(0, max(poly.degree_in(p, Var.D) for row in f.mat for p in row))


def _delta_system(A, B, f, E: SubmoduleBasis, deg: int):
    gens_E = E.columns()
    images = modmap_columns(f)
    unknowns = [(i, k, p) for i in range(A.rank) for k in range(len(gens_E)) for p in range(deg + 1)]
    columns: List[Dict[Hashable, Rational]] = []
    for i, k, p in unknowns:
        candidate = scal_mul(D ** p, gens_E[k])
        column = {}
        for j in range(A.rank):
            value = eval_bracket(B, candidate, images[j], Var.LAM)
            for comp, c in enumerate(value.comps):
                for monom, coeff in c.items():
                    column[((i, j), comp, monom)] = coeff
        columns.append(column)
    target = {}
    for i, j in product(range(A.rank), repeat=2):
        value = modmap_apply(f, A.table[i][j])
        for comp, c in enumerate(value.comps):
            for monom, coeff in c.items():
                target[((i, j), comp, monom)] = coeff
    matrix, _ = linalg.QMatrix.from_columns(columns + [target])
    system = linalg.QMatrix(matrix.rows, len(unknowns), tuple(row[:-1] for row in matrix.entries))
    rhs = [row[-1] for row in matrix.entries]
    return unknowns, system, rhs


def delta_f(
        A: ConformalAlgebra,
        B: ConformalAlgebra,
        f: ModuleMap,
        logger: Optional[logging.Logger] = None,
        center_margin: int = 2,
        bound_raise: int = 2,
        max_rounds: int = 32,
) -> ModuleMap:
    """The homomorphism attached to a triple homomorphism: ``[delta(a)_lam f(b)] = f([a_lam b])``."""
    logger = logger or logging.getLogger("LCA")
    delta, _ = _attached_homomorphism(A, B, f, logger, center_margin, bound_raise, max_rounds)
    return delta


def _attached_homomorphism(
        A: ConformalAlgebra,
        B: ConformalAlgebra,
        f: ModuleMap,
        logger: logging.Logger,
        center_margin: int,
        bound_raise: int,
        max_rounds: int,
) -> Tuple[ModuleMap, SubmoduleBasis]:
    _require_shape(A, B, f)
    check = modmap_kind(A, B, f, MapKind.TRIPLEHOM, logger)
    if not check:
        raise NotTripleHomError(f"triple homomorphism identity fails on {check.witness}", witness=check.witness)
    E = enveloping(B, f, max_rounds, logger)
    bound = _map_degree(f) + table_degree(B) + center_margin
    if not center_check(B, E, bound, logger):
        raise CenterNonzeroError(f"the enveloping subalgebra has a nonzero center (checked up to D-degree {bound})")
    if not is_perfect(A):
        raise NotPerfectError("the source algebra is not perfect")

    gens_E = E.columns()
    deg = _map_degree(f) + table_degree(A) + table_degree(B)
    for attempt in range(2):
        unknowns, system, rhs = _delta_system(A, B, f, E, deg)
        logger.debug("attached homomorphism system: %d unknowns x %d equations", system.cols, system.rows)
        solved = linalg.solve_affine_q(system, rhs)
        if solved is not None:
            particular, null = solved
            if null:
                raise CenterNonzeroError("the attached homomorphism is not unique")
            cols = [[poly.ZERO] * B.rank for _ in range(A.rank)]
            for (i, k, p), coeff in zip(unknowns, particular):
                if coeff:
                    for r, c in enumerate(gens_E[k].comps):
                        if c:
                            cols[i][r] = cols[i][r] + D ** p * c * coeff
            delta = ModuleMap.from_columns(B.rank, [ModElement(B.rank, tuple(c)) for c in cols])
            if not modmap_kind(A, B, delta, MapKind.HOM, logger):
                raise SplitVerificationError("the attached map is not a homomorphism")
            return delta, E
        if attempt == 0:
            deg += bound_raise
            logger.warning("attached homomorphism system inconsistent, raising D-degree bound to %d", deg)
    raise NoSolutionError("no attached homomorphism within the degree bounds")


def _brackets_vanish(B: ConformalAlgebra, left: SubmoduleBasis, right: SubmoduleBasis) -> bool:
    return all(
        elem_is_zero(eval_bracket(B, u, v, Var.LAM)) for u in left.columns() for v in right.columns()
    )


def _is_ideal(B: ConformalAlgebra, ideal: SubmoduleBasis, ambient: SubmoduleBasis) -> bool:
    return all(
        linalg.member(w, ideal)
        for u in ideal.columns()
        for v in ambient.columns()
        for w in lambda_coefficients(eval_bracket(B, u, v, Var.LAM))
    )


def split_decompose(
        A: ConformalAlgebra,
        B: ConformalAlgebra,
        f: ModuleMap,
        logger: Optional[logging.Logger] = None,
        center_margin: int = 2,
        bound_raise: int = 2,
        max_rounds: int = 32,
) -> Decomposition:
    logger = logger or logging.getLogger("LCA")
    delta, E = _attached_homomorphism(A, B, f, logger, center_margin, bound_raise, max_rounds)
    half = poly.to_rational("1/2")
    plus = modmap_add(f, delta)
    minus = modmap_sub(f, delta)
    f_I = modmap_scale(plus, half)
    f_J = modmap_scale(minus, half)
    E_plus = linalg.hnf_of(B.rank, modmap_columns(plus))
    E_minus = linalg.hnf_of(B.rank, modmap_columns(minus))

    checks = [
        ("f = f_I + f_J", modmap_add(f_I, f_J) == f),
        ("f_I is a homomorphism", bool(modmap_kind(A, B, f_I, MapKind.HOM, logger))),
        ("f_J is an anti-homomorphism", bool(modmap_kind(A, B, f_J, MapKind.ANTIHOM, logger))),
        ("[E+ lam E-] = 0", _brackets_vanish(B, E_plus, E_minus)),
        ("E+ and E- intersect trivially", linalg.intersect(E_plus, E_minus).is_empty),
        ("image of f_I lies in E+", all(linalg.member(v, E_plus) for v in modmap_columns(f_I))),
        ("image of f_J lies in E-", all(linalg.member(v, E_minus) for v in modmap_columns(f_J))),
        ("E+ is an ideal of E", _is_ideal(B, E_plus, E)),
        ("E- is an ideal of E", _is_ideal(B, E_minus, E)),
        ("E = E+ + E-", linalg.submodule_contains(linalg.submodule_sum(E_plus, E_minus), E)),
    ]
    failed = [name for name, ok in checks if not ok]
    if failed:
        raise SplitVerificationError(f"split postconditions fail: {', '.join(failed)}")

    if f_J.is_zero():
        label = SplitLabel.HOM
    elif f_I.is_zero():
        label = SplitLabel.ANTIHOM
    else:
        label = SplitLabel.DIRECT_SUM
    logger.info("triple homomorphism split as %s", label.value)
    return Decomposition(f_I, f_J, E, E_plus, E_minus, delta, label, tuple(checks))
