"""Multi-slot tensor vectors and balanced tensor quotients."""

import pytest

from hgx.algebra import MultiModule
from hgx.fields import QQ
from hgx.linalg import NotWellDefined
from hgx.models import base_qxq, base_upper_triangular
from hgx.tensor import (TensorQ, t_add, t_flatten, t_mul, t_perm, t_scale,
                        t_sub, t_subst, t_tensor, t_unflatten)

one = QQ.one


def test_tensor_vector_arithmetic():
    u = {(0, 1): one, (1, 0): QQ.of(2)}
    v = {(0, 1): -one}
    assert t_add(u, v) == {(1, 0): QQ.of(2)}
    assert t_sub(t_add(u, v), v) == u
    assert t_scale(QQ.zero, u) == {}
    assert t_tensor({(0,): one}, {(1, 2): QQ.of(3)}) == {(0, 1, 2): QQ.of(3)}
    assert t_perm(u, [1, 0]) == {(1, 0): one, (0, 1): QQ.of(2)}


def test_flatten_roundtrip():
    u = {(0, 1): one, (2, 0): QQ.of(-3)}
    assert t_unflatten(t_flatten(u, [3, 2]), [3, 2]) == u


def test_t_mul_and_subst():
    b = base_qxq()
    u = {(0, 1): one}
    assert t_mul(u, 0, 1, b) == {(b_key,): c for b_key, c
                                 in b.basis_mul(0, 1).items()}
    table = [{(i, i): one} for i in range(b.dim)]   # diagonal "coproduct"
    assert t_subst({(1,): QQ.of(2)}, 0, table) == {(1, 1): QQ.of(2)}


def regular_bimodule(b):
    return MultiModule(
        b, b.dim,
        {"leftB": [b.left_mult({i: one}) for i in range(b.dim)],
         "rightB": [b.right_mult({i: one}) for i in range(b.dim)]},
        check=True)


@pytest.mark.parametrize("base", [base_qxq, base_upper_triangular])
def test_balanced_self_tensor_collapses(base):
    b = base()
    m = regular_bimodule(b)
    t = TensorQ([m, m], [(0, "rightB", 1, "leftB")])
    # B (x)_B B ~ B
    assert t.dim == b.dim
    # x.b (x) y ~ x (x) b.y on all basis triples
    for i in range(b.dim):
        for j in range(b.dim):
            for k in range(b.dim):
                lhs = {(r, j): c for r, c in b.basis_mul(i, k).items()}
                rhs = {(i, r): c for r, c in b.basis_mul(k, j).items()}
                assert t.project_t(lhs) == t.project_t(rhs)


def test_canonical_representative_is_idempotent():
    b = base_upper_triangular()
    m = regular_bimodule(b)
    t = TensorQ([m, m], [(0, "rightB", 1, "leftB")])
    v = {(0, 1): one, (2, 2): QQ.of(5)}
    assert t.canon(t.canon(v)) == t.canon(v)
    assert t.project_t(t.canon(v)) == t.project_t(v)


def test_descend_slot_op_rejects_unbalanced_maps():
    b = base_upper_triangular()
    m = regular_bimodule(b)
    t = TensorQ([m, m], [(0, "rightB", 1, "leftB")])
    # left multiplication on slot 0 is balanced
    t.descend_slot_op(b.left_mult({2: one}), 0)
    # right multiplication on slot 0 by a non-central element is not
    with pytest.raises(NotWellDefined):
        t.descend_slot_op(b.right_mult({2: one}), 0)
