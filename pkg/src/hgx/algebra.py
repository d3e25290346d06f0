"""Finite-dimensional unital algebras given by structure constants.

An algebra is a distinguished basis e_0..e_{n-1} with a multiplication table
e_i e_j = sum_k c_{ijk} e_k and a unit vector.  Validation is eager: the
constructor checks all associativity and unit equations and refuses invalid
data, so downstream code may assume the axioms.

The opposite algebra keeps the same basis with reversed product; the "bar"
map is the identity on coordinates throughout the library.
"""

from __future__ import annotations

from .linalg import (Lin, vadd, vaddmul, vscale, from_list)


class ValidationError(Exception):
    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


class NonCommutingImages(ValidationError):
    pass


class UnknownAction(KeyError):
    pass


class FiniteDimAlgebra:
    """A unital associative algebra by structure constants over a field."""

    def __init__(self, field, table, unit, label="A", check=True):
        """table[i][j] = sparse vector for e_i * e_j; unit a sparse vector."""
        self.field = field
        self.dim = len(table)
        if self.dim == 0:
            raise ValidationError("zero-dimensional algebra rejected")
        self.table = table
        self.unit = unit
        self.label = label
        if check:
            rep = self.check()
            if rep:
                raise ValidationError("invalid algebra %s: %s"
                                      % (label, rep[0]), witness=rep[0])

    def check(self):
        """List of violated axiom instances (empty = valid)."""
        bad = []
        n = self.dim
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    lhs = self.mul(self.table[i][j], {k: self.field.one})
                    rhs = self.mul({i: self.field.one}, self.table[j][k])
                    if lhs != rhs:
                        bad.append(("associativity", i, j, k))
        for i in range(n):
            e = {i: self.field.one}
            if self.mul(self.unit, e) != e:
                bad.append(("left unit", i))
            if self.mul(e, self.unit) != e:
                bad.append(("right unit", i))
        return bad

    def mul(self, x, y):
        out = {}
        for i, a in x.items():
            row = self.table[i]
            for j, b in y.items():
                out = vaddmul(out, a * b, row[j])
        return out

    def basis_mul(self, i, j):
        return self.table[i][j]

    def left_mult(self, x):
        """The operator y -> x*y."""
        return Lin(self.field, self.dim, self.dim,
                   [self.mul(x, {j: self.field.one}) for j in range(self.dim)])

    def right_mult(self, x):
        """The operator y -> y*x."""
        return Lin(self.field, self.dim, self.dim,
                   [self.mul({j: self.field.one}, x) for j in range(self.dim)])

    def opposite(self):
        table = [[self.table[j][i] for j in range(self.dim)]
                 for i in range(self.dim)]
        return FiniteDimAlgebra(self.field, table, self.unit,
                                label=self.label + "~op", check=False)

    def scalar(self, c):
        return vscale(c, self.unit)

    def __eq__(self, other):
        return (isinstance(other, FiniteDimAlgebra)
                and self.field == other.field
                and self.table == other.table and self.unit == other.unit)

    def __repr__(self):
        return "FiniteDimAlgebra(%s, dim %d)" % (self.label, self.dim)


def check_algebra(a):
    """Re-run the axiom suite on an already built algebra."""
    return a.check()


class AlgebraMorphism:
    """A unital algebra map given by its matrix on the distinguished bases."""

    def __init__(self, source, target, lin, check=True):
        self.source = source
        self.target = target
        self.lin = lin
        if check:
            if lin.apply(source.unit) != target.unit:
                raise ValidationError("morphism does not preserve the unit")
            for i in range(source.dim):
                for j in range(source.dim):
                    lhs = lin.apply(source.basis_mul(i, j))
                    rhs = target.mul(lin.cols[i], lin.cols[j])
                    if lhs != rhs:
                        raise ValidationError(
                            "morphism not multiplicative", witness=(i, j))

    def __call__(self, x):
        return self.lin.apply(x)


def enveloping(b):
    """B (x) B-op with componentwise product; basis e_i (x) e_j, row-major."""
    n = b.dim
    bop = b.opposite()
    table = []
    for i1 in range(n):
        for j1 in range(n):
            row = []
            for i2 in range(n):
                for j2 in range(n):
                    x = b.basis_mul(i1, i2)
                    y = bop.basis_mul(j1, j2)
                    prod = {}
                    for k, ck in x.items():
                        for l, cl in y.items():
                            prod[k * n + l] = ck * cl
                    row.append(prod)
            table.append(row)
    unit = {}
    for i, ci in b.unit.items():
        for j, cj in b.unit.items():
            unit[i * n + j] = ci * cj
    return FiniteDimAlgebra(b.field, table, unit, label=b.label + "~e",
                            check=False)


class MultiModule:
    """A space with several named commuting base-algebra actions.

    Action names: leftB, leftBbar, rightB, rightBbar.  "bar" actions are
    actions of the opposite base algebra; left/right decides on which side
    the composition law is read.
    """

    SIDES = {"leftB": ("left", False), "leftBbar": ("left", True),
             "rightB": ("right", False), "rightBbar": ("right", True)}

    def __init__(self, base, dim, actions, label="M", check=True):
        self.base = base
        self.dim = dim
        self.actions = actions  # name -> list of Lin, one per basis of base
        self.label = label
        if check:
            rep = self.check()
            if rep:
                raise ValidationError("invalid module %s: %s"
                                      % (label, rep[0]), witness=rep[0])

    def check(self):
        bad = []
        b = self.base
        f = b.field
        ident = Lin.identity(f, self.dim)
        for name, mats in self.actions.items():
            side, barred = self.SIDES[name]
            unit_op = Lin(f, self.dim, self.dim)
            for i, c in b.unit.items():
                unit_op = unit_op + _scale_lin(c, mats[i])
            if unit_op != ident:
                bad.append((name, "unit"))
            for i in range(b.dim):
                for j in range(b.dim):
                    comp = mats[i] @ mats[j]
                    # product in the acting algebra, as seen by operator
                    # composition on the chosen side
                    if side == "left":
                        prod = b.basis_mul(j, i) if barred else b.basis_mul(i, j)
                    else:
                        prod = b.basis_mul(i, j) if barred else b.basis_mul(j, i)
                    want = Lin(f, self.dim, self.dim)
                    for k, c in prod.items():
                        want = want + _scale_lin(c, mats[k])
                    if comp != want:
                        bad.append((name, "composition", i, j))
        names = sorted(self.actions)
        for a in range(len(names)):
            for bname in range(a + 1, len(names)):
                ma, mb = self.actions[names[a]], self.actions[names[bname]]
                for i in range(b.dim):
                    for j in range(b.dim):
                        if ma[i] @ mb[j] != mb[j] @ ma[i]:
                            bad.append(("commute", names[a], names[bname], i, j))
        return bad

    def act(self, name, a, m):
        """Apply the named action of algebra element a to module vector m."""
        if name not in self.actions:
            raise UnknownAction(name)
        out = {}
        mats = self.actions[name]
        for i, c in a.items():
            out = vadd(out, vscale(c, mats[i].apply(m)))
        return out

    def restrict(self, names, label=None):
        return MultiModule(self.base, self.dim,
                           {n: self.actions[n] for n in names},
                           label=label or self.label, check=False)


def _scale_lin(c, lin):
    return Lin(lin.field, lin.nrows, lin.ncols,
               [vscale(c, col) for col in lin.cols])


class BeRing:
    """An algebra L with commuting source/target maps from B and B-op."""

    def __init__(self, base, total, src, tgt, check=True):
        self.base = base              # B
        self.base_op = base.opposite()
        self.total = total            # L
        self.src = src                # AlgebraMorphism B -> L
        self.tgt = tgt                # AlgebraMorphism B-op -> L
        if check:
            for i in range(base.dim):
                si = src.lin.cols[i]
                for j in range(base.dim):
                    tj = tgt.lin.cols[j]
                    if total.mul(si, tj) != total.mul(tj, si):
                        raise NonCommutingImages(
                            "source/target images do not commute",
                            witness=(i, j))

    def s(self, b):
        return self.src(b)

    def t(self, b):
        return self.tgt(b)

    def module(self, check=False):
        """L with the four standard actions b.X, b~.X, X.b, X.b~."""
        L, n = self.total, self.base.dim
        acts = {
            "leftB": [L.left_mult(self.src.lin.cols[i]) for i in range(n)],
            "leftBbar": [L.left_mult(self.tgt.lin.cols[i]) for i in range(n)],
            "rightB": [L.right_mult(self.src.lin.cols[i]) for i in range(n)],
            "rightBbar": [L.right_mult(self.tgt.lin.cols[i]) for i in range(n)],
        }
        return MultiModule(self.base, L.dim, acts, label=L.label, check=check)


def be_ring(base, total, src, tgt):
    return BeRing(base, total, src, tgt)


def trivial_base(field):
    """The ground field as a one-dimensional base algebra."""
    one = field.one
    return FiniteDimAlgebra(field, [[{0: one}]], {0: one}, label="k",
                            check=False)
