"""Exact linear algebra over sparse coordinate vectors.

Vectors are dicts ``{coordinate index: nonzero scalar}``.  Linear maps are
stored column-wise (the image of each domain basis vector), which makes
applying a map to a sparse vector cheap.  Subspaces are kept in reduced row
echelon form with a fixed column order, so two equal subspaces always have
bit-identical representations and equality is plain comparison.

Quotient spaces pick the non-pivot coordinates of the echelonized relation
matrix as canonical representatives; ``project`` reduces a vector modulo the
relations and ``section`` re-embeds representatives.
"""

from __future__ import annotations


class LinAlgError(Exception):
    pass


class NoSolution(LinAlgError):
    pass


class NotBijective(LinAlgError):
    pass


class AmbientMismatch(LinAlgError):
    pass


class NotWellDefined(LinAlgError):
    """A map failed to kill a quotient's relations; carries a witness."""

    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


# ---------------------------------------------------------------- vectors

def vadd(u, v):
    w = dict(u)
    for i, c in v.items():
        s = w.get(i)
        s = c if s is None else s + c
        if s:
            w[i] = s
        else:
            w.pop(i, None)
    return w


def vaddmul(u, c, v):
    """u + c*v (c a scalar, u not mutated)."""
    if not c:
        return dict(u)
    w = dict(u)
    for i, a in v.items():
        s = w.get(i)
        s = c * a if s is None else s + c * a
        if s:
            w[i] = s
        else:
            w.pop(i, None)
    return w


def vsub(u, v):
    w = dict(u)
    for i, c in v.items():
        s = w.get(i)
        s = -c if s is None else s - c
        if s:
            w[i] = s
        else:
            w.pop(i, None)
    return w


def vscale(c, v):
    if not c:
        return {}
    return {i: c * a for i, a in v.items()}


def veq(u, v):
    return u == v


def from_list(xs):
    return {i: c for i, c in enumerate(xs) if c}


def to_list(v, n, zero):
    out = [zero] * n
    for i, c in v.items():
        out[i] = c
    return out


# ---------------------------------------------------------------- maps

class Lin:
    """A linear map stored as columns (images of domain basis vectors)."""

    __slots__ = ("field", "nrows", "ncols", "cols")

    def __init__(self, field, nrows, ncols, cols=None):
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        self.cols = [{} for _ in range(ncols)] if cols is None else cols

    @classmethod
    def identity(cls, field, n):
        return cls(field, n, n, [{i: field.one} for i in range(n)])

    @classmethod
    def from_rows(cls, field, rows, ncols):
        cols = [{} for _ in range(ncols)]
        for i, row in enumerate(rows):
            for j, c in row.items():
                if c:
                    cols[j][i] = c
        return cls(field, len(rows), ncols, cols)

    @classmethod
    def from_dense(cls, field, entries):
        """entries: list of rows of scalars, codomain.dim x domain.dim."""
        nrows = len(entries)
        ncols = len(entries[0]) if nrows else 0
        cols = [{} for _ in range(ncols)]
        for i, row in enumerate(entries):
            assert len(row) == ncols
            for j, c in enumerate(row):
                if c:
                    cols[j][i] = c
        return cls(field, nrows, ncols, cols)

    def rows(self):
        rows = [{} for _ in range(self.nrows)]
        for j, col in enumerate(self.cols):
            for i, c in col.items():
                rows[i][j] = c
        return rows

    def apply(self, v):
        out = {}
        for j, c in v.items():
            out = vaddmul(out, c, self.cols[j])
        return out

    def __matmul__(self, other):
        if other.nrows != self.ncols:
            raise AmbientMismatch("compose %d x %d with %d x %d"
                                  % (self.nrows, self.ncols, other.nrows, other.ncols))
        return Lin(self.field, self.nrows, other.ncols,
                   [self.apply(col) for col in other.cols])

    def __add__(self, other):
        return Lin(self.field, self.nrows, self.ncols,
                   [vadd(a, b) for a, b in zip(self.cols, other.cols)])

    def __sub__(self, other):
        return Lin(self.field, self.nrows, self.ncols,
                   [vsub(a, b) for a, b in zip(self.cols, other.cols)])

    def __eq__(self, other):
        return (isinstance(other, Lin) and self.nrows == other.nrows
                and self.ncols == other.ncols and self.cols == other.cols)

    def is_zero(self):
        return all(not col for col in self.cols)

    def __repr__(self):
        return "Lin(%dx%d)" % (self.nrows, self.ncols)


def tensor_lin(a, b):
    """Kronecker product acting on V_a (x) V_b, index = i*b.ncols... row-major."""
    cols = []
    for ja in range(a.ncols):
        ca = a.cols[ja]
        for jb in range(b.ncols):
            cb = b.cols[jb]
            col = {}
            for ia, x in ca.items():
                for ib, y in cb.items():
                    col[ia * b.nrows + ib] = x * y
            cols.append(col)
    return Lin(a.field, a.nrows * b.nrows, a.ncols * b.ncols, cols)


# ---------------------------------------------------------------- echelon

def _reduce_once(v, pivrows):
    """Reduce v against a fully reduced pivot set (single pass suffices)."""
    for p in [p for p in v if p in pivrows]:
        c = v.get(p)
        if c:
            v = vaddmul(v, -c, pivrows[p])
    return v


def rref(vectors):
    """Reduced row echelon form of the span of ``vectors``.

    Returns dict {pivot column: row}, each row normalized with a 1 at its
    pivot and zeros at every other pivot column.
    """
    pivrows = {}
    for v in vectors:
        v = _reduce_once(dict(v), pivrows)
        if not v:
            continue
        p = min(v)
        inv = v[p]
        row = {i: c / inv for i, c in v.items()}
        # back-substitute into existing rows
        for q, r in list(pivrows.items()):
            if p in r:
                pivrows[q] = vaddmul(r, -r[p], row)
        pivrows[p] = row
    return pivrows


class Subspace:
    """A subspace in canonical reduced-echelon presentation."""

    __slots__ = ("field", "ambient_dim", "rows")

    def __init__(self, field, ambient_dim, rows):
        self.field = field
        self.ambient_dim = ambient_dim
        self.rows = rows  # dict pivot -> row vec

    @classmethod
    def from_vectors(cls, field, ambient_dim, vectors):
        return cls(field, ambient_dim, rref(vectors))

    @property
    def dim(self):
        return len(self.rows)

    def basis(self):
        return [self.rows[p] for p in sorted(self.rows)]

    def reduce(self, v):
        return _reduce_once(dict(v), self.rows)

    def contains(self, v):
        return not self.reduce(v)

    def coords(self, v):
        """Coefficients of v in the echelon basis; raises if v not inside."""
        res = self.reduce(v)
        if res:
            raise NoSolution("vector outside subspace")
        # reduced rows have unit pivots and no other pivot columns, so the
        # coefficient at each pivot reads off directly
        piv = sorted(self.rows)
        return {k: v[p] for k, p in enumerate(piv) if v.get(p)}

    def __eq__(self, other):
        return (isinstance(other, Subspace)
                and self.ambient_dim == other.ambient_dim
                and self.rows == other.rows)

    def __repr__(self):
        return "Subspace(dim %d of %d)" % (self.dim, self.ambient_dim)


def intersect(subspaces):
    """Canonical basis of the intersection of subspaces of a shared ambient."""
    if not subspaces:
        raise AmbientMismatch("empty intersection")
    first = subspaces[0]
    for s in subspaces[1:]:
        if s.ambient_dim != first.ambient_dim:
            raise AmbientMismatch("ambient dims differ")
    cur = first
    for s in subspaces[1:]:
        # x = sum c_k u_k constrained to reduce to 0 modulo s
        ub = cur.basis()
        eqmap = Lin(cur.field, s.ambient_dim, len(ub),
                    [s.reduce(u) for u in ub])
        ker = kernel(eqmap)
        vecs = []
        for kv in ker.basis():
            x = {}
            for k, c in kv.items():
                x = vaddmul(x, c, ub[k])
            vecs.append(x)
        cur = Subspace.from_vectors(cur.field, cur.ambient_dim, vecs)
    return cur


def kernel(a):
    """Canonical echelon basis of the kernel of a Lin."""
    pivrows = rref(a.rows())
    free = [j for j in range(a.ncols) if j not in pivrows]
    vecs = []
    for f in free:
        x = {f: a.field.one}
        for p, row in pivrows.items():
            c = row.get(f)
            if c:
                x[p] = -c
        vecs.append(x)
    return Subspace.from_vectors(a.field, a.ncols, vecs)


def rank(a):
    return len(rref(a.rows()))


def solve(a, b):
    """The pivot solution x of A x = b (free variables zero), or NoSolution."""
    aug = a.ncols
    rows = a.rows()
    for i, c in b.items():
        rows[i] = dict(rows[i])
        rows[i][aug] = c
    pivrows = rref(rows)
    if aug in pivrows:
        raise NoSolution("right-hand side outside the image")
    x = {}
    for p, row in pivrows.items():
        c = row.get(aug)
        if c:
            x[p] = c
    return x


def invert(a):
    """Two-sided inverse of a bijective Lin."""
    if a.nrows != a.ncols:
        raise NotBijective("non-square map %r" % a)
    n = a.ncols
    rows = a.rows()
    for i in range(n):
        rows[i] = dict(rows[i])
        rows[i][n + i] = a.field.one
    pivrows = rref(rows)
    if sorted(p for p in pivrows if p < n) != list(range(n)):
        raise NotBijective("rank deficient map")
    inv_rows = []
    for p in range(n):
        row = pivrows[p]
        inv_rows.append({j - n: c for j, c in row.items() if j >= n})
    return Lin.from_rows(a.field, inv_rows, n)


# ---------------------------------------------------------------- quotients

class QSpace:
    """A quotient of a coordinate space by the span of relation vectors."""

    __slots__ = ("field", "ambient_dim", "relations", "free", "_repidx",
                 "_project_lin", "_section_lin")

    def __init__(self, field, ambient_dim, relation_vectors):
        self.field = field
        self.ambient_dim = ambient_dim
        self.relations = Subspace.from_vectors(field, ambient_dim,
                                               relation_vectors)
        piv = self.relations.rows
        self.free = [j for j in range(ambient_dim) if j not in piv]
        self._repidx = {f: k for k, f in enumerate(self.free)}
        self._project_lin = None
        self._section_lin = None

    @property
    def dim(self):
        return len(self.free)

    def project(self, v):
        red = self.relations.reduce(v)
        return {self._repidx[i]: c for i, c in red.items()}

    def section(self, w):
        return {self.free[i]: c for i, c in w.items()}

    def project_lin(self):
        if self._project_lin is None:
            self._project_lin = Lin(self.field, self.dim, self.ambient_dim,
                                    [self.project({j: self.field.one})
                                     for j in range(self.ambient_dim)])
        return self._project_lin

    def section_lin(self):
        if self._section_lin is None:
            self._section_lin = Lin(self.field, self.ambient_dim, self.dim,
                                    [{self.free[i]: self.field.one}
                                     for i in range(self.dim)])
        return self._section_lin

    def __repr__(self):
        return "QSpace(%d -> %d)" % (self.ambient_dim, self.dim)


def descend(f, qdom, qcod):
    """Induce reps->reps from an ambient-level map killing the relations."""
    for p in sorted(qdom.relations.rows):
        r = qdom.relations.rows[p]
        img = qcod.project(f.apply(r))
        if img:
            raise NotWellDefined("map does not descend to the quotient",
                                 witness=r)
    cols = [qcod.project(f.apply(qdom.section({i: qdom.field.one})))
            for i in range(qdom.dim)]
    return Lin(qdom.field, qcod.dim, qdom.dim, cols)
