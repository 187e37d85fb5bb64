# app/tests/unit/test_poly.py
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from app.domain import poly
from app.domain.poly import Var

D = poly.var(Var.D)
LAM = poly.var(Var.LAM)
X = poly.var(Var.X)

coefficients = st.fractions(min_value=-5, max_value=5, max_denominator=4)
monomials = st.tuples(*(st.integers(0, 2) for _ in Var))
polys = st.dictionaries(monomials, coefficients, max_size=4).map(poly.from_terms)


@given(polys, polys, polys)
def test_ring_laws(p, q, r):
    assert (p + q) + r == p + (q + r)
    assert p * (q + r) == p * q + p * r
    assert p * q == q * p
    assert p - p == poly.ZERO


@given(polys, polys, polys)
def test_substitute_is_a_ring_homomorphism(p, q, repl):
    for v in (Var.D, Var.LAM, Var.X):
        assert poly.substitute(p * q, v, repl) == poly.substitute(p, v, repl) * poly.substitute(q, v, repl)
        assert poly.substitute(p + q, v, repl) == poly.substitute(p, v, repl) + poly.substitute(q, v, repl)


@given(polys)
def test_coefficients_in_reassembles(p):
    rebuilt = poly.ZERO
    for e, c in poly.coefficients_in(p, Var.LAM).items():
        assert Var.LAM not in poly.variables(c)
        rebuilt += c * LAM ** e
    assert rebuilt == p


def test_shift_substitution():
    p = D ** 2 + LAM
    assert poly.substitute(p, Var.D, D + LAM) == D ** 2 + 2 * D * LAM + LAM ** 2 + LAM


def test_substitute_missing_variable_is_identity():
    p = D + 1
    assert poly.substitute(p, Var.X, LAM) is p


def test_degrees():
    p = D ** 3 * X + LAM ** 2
    assert poly.degree_in(p, Var.D) == 3
    assert poly.degree_in(p, Var.MU) == 0
    assert poly.degree_in(poly.ZERO, Var.D) == -1
    assert poly.total_degree(p) == 4
    assert poly.variables(p) == frozenset({Var.D, Var.X, Var.LAM})
    assert poly.uses_only(p, (Var.D, Var.LAM, Var.X))
    assert not poly.uses_only(p, (Var.D,))


def test_rationals_are_exact():
    half = poly.const(Fraction(1, 2))
    assert half + half == poly.ONE
    assert poly.const("1/3") * 3 == poly.ONE
    assert poly.scale(D, "2/4") == poly.const("1/2") * D


def test_floats_are_rejected():
    with pytest.raises(TypeError):
        poly.to_rational(0.5)


@pytest.mark.parametrize(
    "p, expected",
    [
        (poly.ZERO, "0"),
        (D + 2 * LAM, "D + 2*lam"),
        (poly.const("1/2") * D, "1/2*D"),
        (D - 2 * LAM, "D - 2*lam"),
        (-D ** 2 + 3, "-D^2 + 3"),
        (D * X, "D*x"),
    ],
)
def test_render_poly(p, expected):
    assert poly.render_poly(p) == expected


def test_monomial_and_coeff():
    m = poly.monomial({Var.D: 2, Var.X: 1}, "3/2")
    assert poly.coeff(m, (2, 0, 0, 0, 1, 0)) == poly.to_rational("3/2")
    assert poly.coeff(m, (0,) * 6) == 0
