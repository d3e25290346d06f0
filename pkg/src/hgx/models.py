"""Built-in example models: the self-certifying test corpus.

Group algebras kG (base = ground field) with the grouplike coproduct, and
the enveloping construction B (x) B-op over a chosen base B, which is the
standard example of a bialgebroid with both split maps invertible.
"""

from __future__ import annotations

from .algebra import (FiniteDimAlgebra, AlgebraMorphism, BeRing, enveloping,
                      trivial_base)
from .bialgebroid import LeftBialgebroid, v2t
from .fields import QQ
from .linalg import Lin
from .tensor import t_tensor


class NotAGroup(ValueError):
    pass


# ---------------------------------------------------------------- groups

def cyclic_group(n):
    """Multiplication table of Z_n as index pairs."""
    return [[(i + j) % n for j in range(n)] for i in range(n)]


def product_group(t1, t2):
    n1, n2 = len(t1), len(t2)
    n = n1 * n2
    table = [[0] * n for _ in range(n)]
    for a1 in range(n1):
        for a2 in range(n2):
            for b1 in range(n1):
                for b2 in range(n2):
                    table[a1 * n2 + a2][b1 * n2 + b2] = (
                        t1[a1][b1] * n2 + t2[a2][b2])
    return table


def _group_inverse(table):
    n = len(table)
    e = None
    for i in range(n):
        if all(table[i][j] == j and table[j][i] == j for j in range(n)):
            e = i
            break
    if e is None:
        raise NotAGroup("no identity element")
    inv = [None] * n
    for i in range(n):
        for j in range(n):
            if table[i][j] == e and table[j][i] == e:
                inv[i] = j
        if inv[i] is None:
            raise NotAGroup("element %d has no inverse" % i)
    # associativity
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if table[table[i][j]][k] != table[i][table[j][k]]:
                    raise NotAGroup("not associative at (%d,%d,%d)" % (i, j, k))
    return e, inv


def group_algebra(table, field=QQ, label="kG"):
    e, _ = _group_inverse(table)
    n = len(table)
    one = field.one
    mul = [[{table[i][j]: one} for j in range(n)] for i in range(n)]
    return FiniteDimAlgebra(field, mul, {e: one}, label=label, check=False)


def build_group_algebra(table, field=QQ, label="kG"):
    """kG as a bialgebroid over the ground field; grouplike coproduct."""
    e, inv = _group_inverse(table)
    alg = group_algebra(table, field, label)
    base = trivial_base(field)
    n = alg.dim
    emb = AlgebraMorphism(base, alg,
                          Lin(field, n, 1, [dict(alg.unit)]), check=False)
    ring = BeRing(base, alg, emb, emb, check=False)
    delta = [{(i, i): field.one} for i in range(n)]
    eps = [{0: field.one} for _ in range(n)]
    lbg = LeftBialgebroid(ring, delta, eps, label=label)
    lbg.antipode = inv  # basis permutation S(g) = g^{-1}
    return lbg


def hopf_algebra_pm_table(lbg, antipode):
    """Closed form X+ (x) X- = X(1) (x) S(X(2)) for grouplike models."""
    one = lbg.field.one
    return [{(i, antipode[i]): one} for i in range(lbg.alg.dim)]


def hopf_algebra_bracket_table(lbg, antipode):
    """Closed form X[-] (x) X[+] = S^{-1}(X(1)) (x) X(2); for grouplike
    elements the inverse antipode is the antipode itself."""
    one = lbg.field.one
    return [{(antipode[i], i): one} for i in range(lbg.alg.dim)]


def klein_group_algebra(field=QQ, label="kZ2xZ2"):
    """The product of two order-2 cyclic groups as a bialgebroid; basis
    index 2*i + j for the element g^i h^j."""
    table = product_group(cyclic_group(2), cyclic_group(2))
    return build_group_algebra(table, field, label)


def bicharacter_form(field=QQ):
    """The sign pairing (g^i h^j, g^k h^l) -> (-1)^(j*k) on the order-4
    model, as a base-valued bilinear table over the one-dimensional base."""
    one = field.one
    form = []
    for x in range(4):
        j = x % 2
        row = []
        for y in range(4):
            k = y // 2
            row.append({0: -one if (j * k) % 2 else one})
        form.append(row)
    return form


def sign_pairing_form(field=QQ):
    """The pairing (g^i, g^j) -> (-1)^(ij) on the order-2 model, as a
    base-valued table over the one-dimensional base."""
    one = field.one
    return [[{0: one}, {0: one}], [{0: one}, {0: -one}]]


# ---------------------------------------------------------------- bases

def base_qxq(field=QQ):
    """The split commutative base: two orthogonal idempotents."""
    one = field.one
    table = [[{0: one}, {}], [{}, {1: one}]]
    return FiniteDimAlgebra(field, table, {0: one, 1: one}, label="QxQ",
                            check=False)


def base_upper_triangular(field=QQ):
    """2x2 upper triangular matrices: basis E11, E22, E12 (noncommutative)."""
    one = field.one
    e11, e22, e12 = 0, 1, 2
    t = [[{} for _ in range(3)] for _ in range(3)]
    t[e11][e11] = {e11: one}
    t[e22][e22] = {e22: one}
    t[e11][e12] = {e12: one}
    t[e12][e22] = {e12: one}
    return FiniteDimAlgebra(field, t, {e11: one, e22: one}, label="UT2",
                            check=False)


def build_enveloping_algebroid(b, label=None):
    """L = B (x) B-op with s(b) = b (x) 1, t = 1 (x) (-), the coproduct
    splitting through the two legs and counit the product of legs."""
    field = b.field
    L = enveloping(b)
    if label:
        L.label = label
    n = b.dim
    s_cols = []
    t_cols = []
    for i in range(n):
        s_cols.append({i * n + j: c for j, c in b.unit.items()})
    for j in range(n):
        t_cols.append({i * n + j: c for i, c in b.unit.items()})
    src = AlgebraMorphism(b, L, Lin(field, n * n, n, s_cols), check=False)
    bop = b.opposite()
    tgt = AlgebraMorphism(bop, L, Lin(field, n * n, n, t_cols), check=False)
    ring = BeRing(b, L, src, tgt)
    delta = []
    eps = []
    for i in range(n):
        for j in range(n):
            delta.append(t_tensor(v2t(s_cols[i]), v2t(t_cols[j])))
            eps.append(b.basis_mul(i, j))
    return LeftBialgebroid(ring, delta, eps,
                           label=label or (b.label + "~env"))
