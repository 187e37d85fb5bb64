# app/domain/poly.py
"""Exact multivariate polynomials over QQ in the six formal variables of the engine.

A ``Poly`` is an element of one fixed sympy ``PolyRing`` (variables ``D, lam, mu, nu, x, y``,
graded-lex order), i.e. a sparse map from 6-tuples of exponents to ``QQ`` coefficients.
sympy keeps the map canonical: zero coefficients are never stored.
"""
from enum import IntEnum
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, Mapping, Sequence, Tuple, Union

from sympy.polys.domains import QQ
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement, ring


class Var(IntEnum):
    D = 0
    LAM = 1
    MU = 2
    NU = 3
    X = 4
    Y = 5


VAR_NAMES: Dict[Var, str] = {
    Var.D: "D",
    Var.LAM: "lam",
    Var.MU: "mu",
    Var.NU: "nu",
    Var.X: "x",
    Var.Y: "y",
}
NAME_TO_VAR: Dict[str, Var] = {name: v for v, name in VAR_NAMES.items()}

RING, *GENS = ring(",".join(VAR_NAMES[v] for v in Var), QQ, grlex)

Poly = PolyElement
Rational = type(QQ.one)
Monomial = Tuple[int, int, int, int, int, int]
RationalLike = Union[int, Fraction, str, Rational]

ZERO: Poly = RING.zero
ONE: Poly = RING.one


def to_rational(value: RationalLike) -> Rational:
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    if isinstance(value, str):
        frac = Fraction(value)
        return QQ(frac.numerator, frac.denominator)
    if isinstance(value, float):
        raise TypeError("floating point coefficients are not supported")
    return QQ.convert(value)


def var(v: Var) -> Poly:
    return GENS[v]


def const(value: RationalLike) -> Poly:
    return RING.ground_new(to_rational(value))


def monomial(exponents: Mapping[Var, int], coefficient: RationalLike = 1) -> Poly:
    expv = [0] * len(Var)
    for v, e in exponents.items():
        expv[v] = e
    return from_terms({tuple(expv): to_rational(coefficient)})


def from_terms(terms: Mapping[Sequence[int], RationalLike]) -> Poly:
    return RING.from_dict({tuple(m): to_rational(c) for m, c in terms.items()})


def add(p: Poly, q: Poly) -> Poly:
    return p + q


def sub(p: Poly, q: Poly) -> Poly:
    return p - q


def neg(p: Poly) -> Poly:
    return -p


def mul(p: Poly, q: Poly) -> Poly:
    return p * q


def scale(p: Poly, c: RationalLike) -> Poly:
    return p * to_rational(c)


def power(p: Poly, n: int) -> Poly:
    return p ** n


def substitute(p: Poly, v: Var, repl: Poly) -> Poly:
    """Replace every occurrence of ``v`` in ``p`` by ``repl`` (a ring homomorphism)."""
    if not p or degree_in(p, v) <= 0:
        return p
    return p.compose(GENS[v], repl)


def coeff(p: Poly, monom: Sequence[int]) -> Rational:
    return p.get(tuple(monom), QQ.zero)


def degree_in(p: Poly, v: Var) -> int:
    # -1 is the sentinel for the zero polynomial
    if not p:
        return -1
    return max(m[v] for m in p.keys())


def total_degree(p: Poly) -> int:
    if not p:
        return -1
    return max(sum(m) for m in p.keys())


def variables(p: Poly) -> FrozenSet[Var]:
    return frozenset(Var(i) for m in p.keys() for i, e in enumerate(m) if e)


def uses_only(p: Poly, allowed: Iterable[Var]) -> bool:
    return variables(p) <= frozenset(allowed)


def coefficients_in(p: Poly, v: Var) -> Dict[int, Poly]:
    """Expand ``p`` as a polynomial in ``v``: exponent -> coefficient free of ``v``."""
    grouped: Dict[int, Dict[Monomial, Rational]] = {}
    for m, c in p.items():
        stripped = list(m)
        stripped[v] = 0
        grouped.setdefault(m[v], {})[tuple(stripped)] = c
    return {e: RING.from_dict(terms) for e, terms in sorted(grouped.items())}


def terms(p: Poly) -> Tuple[Tuple[Monomial, Rational], ...]:
    """Terms in descending graded-lex order."""
    return tuple(p.terms())


def render_rational(c: Rational) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def _render_monomial(m: Monomial) -> str:
    factors = []
    for v, e in zip(Var, m):
        if e == 1:
            factors.append(VAR_NAMES[v])
        elif e > 1:
            factors.append(f"{VAR_NAMES[v]}^{e}")
    return "*".join(factors)


def render_poly(p: Poly) -> str:
    if not p:
        return "0"
    parts = []
    for m, c in p.terms():
        negative = c < 0
        magnitude = -c if negative else c
        mono = _render_monomial(m)
        if not mono:
            body = render_rational(magnitude)
        elif magnitude == 1:
            body = mono
        else:
            body = f"{render_rational(magnitude)}*{mono}"
        if not parts:
            parts.append(f"-{body}" if negative else body)
        else:
            parts.append(f"- {body}" if negative else f"+ {body}")
    return " ".join(parts)
