"""Property tests for the sparse exact linear algebra kernel."""

import pytest
from hypothesis import given, settings, strategies as st

from hgx.fields import QQ, Field
from hgx.linalg import (Lin, NoSolution, NotBijective, NotWellDefined,
                        QSpace, Subspace, descend, invert, kernel, rank,
                        rref, solve, vadd, vaddmul, vscale, vsub)

scalars = st.integers(min_value=-6, max_value=6).map(QQ.of)


def vecs(n):
    return st.lists(scalars, min_size=n, max_size=n).map(
        lambda xs: {i: c for i, c in enumerate(xs) if c})


def lins(nrows, ncols):
    return st.lists(vecs(nrows), min_size=ncols, max_size=ncols).map(
        lambda cols: Lin(QQ, nrows, ncols, cols))


@given(vecs(5), vecs(5), scalars)
def test_vector_arithmetic(u, v, c):
    assert vsub(vadd(u, v), v) == u
    assert vaddmul(dict(u), c, v) == vadd(u, vscale(c, v))
    assert vscale(QQ.zero, u) == {}
    assert all(val for val in vadd(u, v).values())  # no stored zeros


@given(st.lists(vecs(4), max_size=6))
def test_rref_spans_and_is_reduced(rows):
    red = rref([dict(r) for r in rows])
    sp = Subspace.from_vectors(QQ, 4, rows)
    sp2 = Subspace.from_vectors(QQ, 4, list(red.values()))
    assert sp.dim == sp2.dim == len(red)
    for r in rows:
        assert sp2.contains(r)


@given(lins(4, 3), vecs(3))
def test_solve_produces_solutions(a, x):
    b = a.apply(x)
    got = solve(a, b)
    assert a.apply(got) == b


@given(lins(4, 4))
def test_invert_or_kernel(a):
    try:
        ai = invert(a)
    except NotBijective:
        assert kernel(a).dim == 4 - rank(a) > 0
        return
    assert ai @ a == Lin.identity(QQ, 4)
    assert a @ ai == Lin.identity(QQ, 4)


@given(lins(4, 6))
def test_rank_nullity(a):
    assert rank(a) + kernel(a).dim == 6


def test_solve_raises_outside_image():
    a = Lin(QQ, 2, 1, [{0: QQ.one}])
    with pytest.raises(NoSolution):
        solve(a, {1: QQ.one})


@given(st.lists(vecs(5), max_size=3), vecs(5))
def test_qspace_project_section(rels, v):
    q = QSpace(QQ, 5, rels)
    w = q.project(v)
    # the section is a genuine section of the projection
    assert q.project(q.section(w)) == w
    # projecting kills exactly the relation span
    diff = vsub(v, q.section(w))
    assert Subspace.from_vectors(QQ, 5, rels).contains(diff)


def test_descend_rejects_ill_defined_maps():
    # quotient of k^2 by e0 - e1; the swap descends, the projection to e0
    # composed with doubling does not
    q = QSpace(QQ, 2, [{0: QQ.one, 1: -QQ.one}])
    swap = Lin(QQ, 2, 2, [{1: QQ.one}, {0: QQ.one}])
    d = descend(swap, q, q)
    assert d == Lin.identity(QQ, 1)
    bad = Lin(QQ, 2, 2, [{0: QQ.of(2)}, {}])
    with pytest.raises(NotWellDefined):
        descend(bad, q, q)


@given(st.lists(vecs(4), min_size=1, max_size=4))
def test_subspace_coords(rows):
    sp = Subspace.from_vectors(QQ, 4, rows)
    for b in sp.basis():
        got = sp.coords(b)
        acc = {}
        for i, c in got.items():
            acc = vaddmul(acc, c, sp.basis()[i])
        assert acc == b


@settings(max_examples=25)
@given(st.sampled_from([2, 3, 5, 7, 13]),
       st.lists(st.integers(min_value=-6, max_value=6),
                min_size=9, max_size=9))
def test_prime_field_invert(p, entries):
    f = Field(p)
    cols = [{i: f.of(entries[3 * j + i]) for i in range(3)
             if f.of(entries[3 * j + i])} for j in range(3)]
    b = Lin(f, 3, 3, cols)
    try:
        bi = invert(b)
    except NotBijective:
        assert kernel(b).dim > 0
        return
    assert b @ bi == Lin.identity(f, 3)
