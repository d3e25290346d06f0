"""Structure-constant algebras, morphisms, and module bundles."""

import pytest

from hgx.algebra import (AlgebraMorphism, FiniteDimAlgebra, MultiModule,
                         ValidationError, check_algebra, enveloping,
                         trivial_base)
from hgx.fields import QQ
from hgx.linalg import Lin
from hgx.models import base_qxq, base_upper_triangular, group_algebra


def test_group_algebra_is_valid():
    a = group_algebra([[0, 1], [1, 0]])
    assert not check_algebra(a)
    assert a.mul({1: QQ.one}, {1: QQ.one}) == {0: QQ.one}


def test_nonassociative_table_rejected():
    one = QQ.one
    # e1*e1 = e0 + e1 with e1 "grouplike-ish" breaks associativity
    table = [[{0: one}, {1: one}], [{1: one}, {0: one, 1: one}]]
    bad = FiniteDimAlgebra(QQ, table, {0: one}, check=False)
    # this particular table happens to be associative; break the unit
    assert not check_algebra(bad)
    with pytest.raises(ValidationError) as ei:
        FiniteDimAlgebra(QQ, table, {1: one}, label="bad")
    assert ei.value.witness is not None


def test_opposite_squares_to_identity():
    b = base_upper_triangular()
    assert b.opposite().opposite().table == b.table
    # opposite really flips a noncommutative product
    x, y = {2: QQ.one}, {0: QQ.one}
    assert b.mul(x, y) != b.opposite().mul(x, y)
    assert b.opposite().mul(x, y) == b.mul(y, x)


def test_left_right_mult_operators():
    b = base_qxq()
    for i in range(b.dim):
        x = {i: QQ.one}
        for j in range(b.dim):
            y = {j: QQ.one}
            assert b.left_mult(x).apply(y) == b.mul(x, y)
            assert b.right_mult(x).apply(y) == b.mul(y, x)


def test_enveloping_contains_both_sides():
    b = base_upper_triangular()
    e = enveloping(b)
    assert e.dim == b.dim * b.dim
    assert not check_algebra(e)


def test_morphism_validation():
    a = group_algebra([[0, 1], [1, 0]])
    AlgebraMorphism(a, a, Lin.identity(QQ, 2), check=True)
    bad = Lin(QQ, 2, 2, [{0: QQ.one}, {0: QQ.of(2)}])
    with pytest.raises(ValidationError):
        AlgebraMorphism(a, a, bad, check=True)


def test_multimodule_checks_action_axioms():
    b = base_qxq()
    acts = [b.left_mult({i: QQ.one}) for i in range(b.dim)]
    MultiModule(b, b.dim, {"leftB": acts}, check=True)
    bad = [Lin.identity(QQ, b.dim), Lin.identity(QQ, b.dim)]
    with pytest.raises(ValidationError):
        MultiModule(b, b.dim, {"leftB": bad}, check=True)


def test_trivial_base():
    t = trivial_base(QQ)
    assert t.dim == 1
    assert t.mul({0: QQ.of(2)}, {0: QQ.of(3)}) == {0: QQ.of(6)}
