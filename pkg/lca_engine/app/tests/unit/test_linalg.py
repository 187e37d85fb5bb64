# app/tests/unit/test_linalg.py
import pytest
from sympy.polys.domains import QQ

from app.domain import linalg, poly
from app.domain.linalg import PolyMatrix, QMatrix
from app.domain.module import make
from app.domain.poly import Var

D = poly.var(Var.D)
ONE, ZERO = poly.ONE, poly.ZERO


def q(*values):
    return tuple(QQ(v) for v in values)


def test_nullspace_is_canonical():
    m = QMatrix.from_rows([[1, 2, 3], [2, 4, 6]])
    basis = linalg.nullspace_q(m)
    assert basis == [q(-2, 1, 0), q(-3, 0, 1)]


def test_rref_and_rank():
    assert linalg.rref_q([q(2, 4), q(1, 2)]) == [q(1, 2)]
    assert linalg.rank_q([q(1, 0), q(0, 1), q(1, 1)]) == 2
    assert linalg.rank_q([]) == 0


def test_solve_affine():
    m = QMatrix.from_rows([[1, 1], [1, -1]])
    particular, null = linalg.solve_affine_q(m, [QQ(2), QQ(0)])
    assert particular == q(1, 1)
    assert null == []
    inconsistent = QMatrix.from_rows([[1, 1], [1, 1]])
    assert linalg.solve_affine_q(inconsistent, [QQ(1), QQ(2)]) is None


def test_from_columns_keeps_first_seen_row_order():
    m, keys = QMatrix.from_columns([{"a": QQ(1)}, {"b": QQ(2), "a": QQ(3)}])
    assert keys == ["a", "b"]
    assert m.entries == (q(1, 3), q(0, 2))


def test_hnf_is_canonical():
    s1 = linalg.hnf_of(2, [make([D, ONE]), make([ONE, ZERO])])
    s2 = linalg.hnf_of(2, [make([ONE, ZERO]), make([ZERO, ONE]), make([D, D])])
    assert s1.is_full()
    assert linalg.submodule_equal(s1, s2)


def test_member():
    s = linalg.hnf_of(2, [make([D, ZERO]), make([ZERO, D ** 2])])
    assert linalg.member(make([D ** 3 + D, D ** 2]), s)
    assert not linalg.member(make([ONE, ZERO]), s)
    assert not linalg.member(make([ZERO, D]), s)


def test_intersect():
    s1 = linalg.hnf_of(1, [make([D])])
    s2 = linalg.hnf_of(1, [make([D + 1])])
    meet = linalg.intersect(s1, s2)
    assert meet.size == 1
    assert linalg.member(make([D * (D + 1)]), meet)
    assert not linalg.member(make([D]), meet)


def test_intersect_of_complementary_lines_is_zero():
    s1 = linalg.hnf_of(2, [make([ONE, ONE])])
    s2 = linalg.hnf_of(2, [make([ONE, -ONE])])
    assert linalg.intersect(s1, s2).is_empty
    total = linalg.submodule_sum(s1, s2)
    assert total.is_full()
    assert linalg.submodule_contains(total, s1)
    assert not linalg.submodule_contains(s1, total)


def test_syzygies():
    m = PolyMatrix.from_columns(1, [[D], [D ** 2]])
    kernel = linalg.syzygies(m)
    assert kernel.cols == 1
    u = kernel.column(0)
    assert u[0] * D + u[1] * D ** 2 == ZERO
    assert u[0] or u[1]


def test_poly_matrix_rejects_other_variables():
    with pytest.raises(ValueError):
        PolyMatrix.from_columns(1, [[poly.var(Var.LAM)]])
