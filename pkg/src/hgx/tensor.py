"""Balanced tensor products and Takeuchi products.

Elements of iterated tensor spaces are sparse dicts keyed by tuples of basis
indices, one slot per tensor factor ("T-vectors").  A small calculus on these
(slot substitution, slot multiplication, permutation) is the workhorse used
to transcribe multilinear identities elsewhere in the library.

Balanced products are genuine quotient spaces (QSpace) of the plain tensor
space by the relation family of their kind; the centralizer condition is a
subspace cut inside such a quotient.  Every operator that is pushed down to a
quotient is mechanically checked to kill the relations first.
"""

from __future__ import annotations

from .linalg import (Lin, QSpace, Subspace, NotWellDefined, descend,
                     intersect, kernel, vadd, vaddmul, invert)


# -------------------------------------------------------------- T-vectors

def t_add(u, v):
    w = dict(u)
    for k, c in v.items():
        s = w.get(k)
        s = c if s is None else s + c
        if s:
            w[k] = s
        else:
            w.pop(k, None)
    return w


def t_sub(u, v):
    return t_add(u, {k: -c for k, c in v.items()})


def t_scale(c, v):
    if not c:
        return {}
    return {k: c * a for k, a in v.items()}


def t_tensor(u, v):
    w = {}
    for k1, c1 in u.items():
        for k2, c2 in v.items():
            w[k1 + k2] = c1 * c2
    return w


def t_basis(*idx):
    raise NotImplementedError  # use {(i, j): field.one} literals


def t_subst(v, slots, table):
    """Replace the given slots by the table entry at their indices.

    ``table`` maps an index (single slot) or index tuple (several slots) to a
    T-vector of arbitrary arity; the replacement is spliced in at the
    position of the first named slot, the other named slots are dropped.
    Linear in v, so coefficients multiply through.
    """
    if isinstance(slots, int):
        slots = (slots,)
    pos = slots[0]
    drop = set(slots)
    out = {}
    for k, c in v.items():
        key = k[slots[0]] if len(slots) == 1 else tuple(k[s] for s in slots)
        sub = table[key]
        if not sub:
            continue
        head = k[:pos]
        mid = tuple(x for i, x in enumerate(k) if i > pos and i not in drop)
        pre = tuple(x for i, x in enumerate(k) if i < pos and i not in drop)
        # slots other than pos may sit before pos; rebuild key order:
        rest_after = mid
        for sk, sc in sub.items():
            nk = pre + sk + rest_after
            s = out.get(nk)
            s = c * sc if s is None else s + c * sc
            if s:
                out[nk] = s
            else:
                out.pop(nk, None)
    return out


def t_mul(v, i, j, alg):
    """Multiply slot i by slot j (in that order) in the algebra; slot j is
    removed, the product sits at the position of slot i."""
    out = {}
    for k, c in v.items():
        prod = alg.basis_mul(k[i], k[j])
        base = tuple(x for p, x in enumerate(k) if p != j)
        ipos = i if i < j else i - 1
        for b, cb in prod.items():
            nk = base[:ipos] + (b,) + base[ipos + 1:]
            s = out.get(nk)
            s = c * cb if s is None else s + c * cb
            if s:
                out[nk] = s
            else:
                out.pop(nk, None)
    return out


def t_perm(v, perm):
    """Reorder slots: new slot p holds old slot perm[p]."""
    return {tuple(k[perm[p]] for p in range(len(perm))): c
            for k, c in v.items()}


def t_act(v, slot, op):
    """Apply a Lin to one slot."""
    out = {}
    for k, c in v.items():
        col = op.cols[k[slot]]
        for b, cb in col.items():
            nk = k[:slot] + (b,) + k[slot + 1:]
            s = out.get(nk)
            s = c * cb if s is None else s + c * cb
            if s:
                out[nk] = s
            else:
                out.pop(nk, None)
    return out


def t_flatten(v, dims):
    out = {}
    for k, c in v.items():
        idx = 0
        for d, x in zip(dims, k):
            idx = idx * d + x
        out[idx] = c
    return out


def t_unflatten(v, dims):
    out = {}
    for idx, c in v.items():
        k = []
        for d in reversed(dims):
            k.append(idx % d)
            idx //= d
        out[tuple(reversed(k))] = c
    return out


def slot_op(op, slot, dims):
    """Embed a Lin acting on one slot as a Lin on the flattened space.

    ``dims`` are the slot dimensions of the domain; the named slot must have
    dimension op.ncols (its codomain dimension replaces it).
    """
    field = op.field
    cdims = list(dims)
    cdims[slot] = op.nrows
    n_dom = 1
    for d in dims:
        n_dom *= d
    n_cod = 1
    for d in cdims:
        n_cod *= d
    cols = []
    for j in range(n_dom):
        key = _unflat(j, dims)
        v = {key: field.one}
        w = t_act(v, slot, op)
        cols.append(t_flatten(w, cdims))
    return Lin(field, n_cod, n_dom, cols)


def _unflat(idx, dims):
    k = []
    for d in reversed(dims):
        k.append(idx % d)
        idx //= d
    return tuple(reversed(k))


# ------------------------------------------------------- balanced products

#: relation families for the balanced tensor kinds, as
#: (action name on slot 0, action name on slot 1): the relation vectors are
#: act0(b) e_m (x) e_n  -  e_m (x) act1(b) e_n over all b, m, n.
KINDS = {
    "DiamondB": ("leftBbar", "leftB"),
    "TensorB": ("rightB", "leftB"),
    "TensorBbar": ("rightBbar", "leftBbar"),
    "CoTensorB": ("leftB", "rightB"),
    "CoTensorBbar": ("leftBbar", "rightBbar"),
}


class MissingAction(KeyError):
    pass


def relation_rows(mods, relspecs):
    """Relation T-vectors for families ((slotA, nameA, slotB, nameB), ...).

    Each family contributes, for every base basis element b and every ambient
    basis tuple, the vector  actA(b)@slotA (e)  -  actB(b)@slotB (e).
    """
    base = mods[0].base
    dims = [m.dim for m in mods]
    rows = []
    for (sa, na, sb, nb) in relspecs:
        if na not in mods[sa].actions:
            raise MissingAction("%s on %s" % (na, mods[sa].label))
        if nb not in mods[sb].actions:
            raise MissingAction("%s on %s" % (nb, mods[sb].label))
        for b in range(base.dim):
            opa = mods[sa].actions[na][b]
            opb = mods[sb].actions[nb][b]
            for key in _iter_keys(dims):
                v = {key: base.field.one}
                r = t_sub(t_act(v, sa, opa), t_act(v, sb, opb))
                if r:
                    rows.append(t_flatten(r, dims))
    return rows


def _iter_keys(dims):
    if not dims:
        yield ()
        return
    for head in range(dims[0]):
        for rest in _iter_keys(dims[1:]):
            yield (head,) + rest


class TensorQ:
    """A quotient of a multi-slot tensor space, with T-vector helpers."""

    def __init__(self, mods, relspecs, label=""):
        self.mods = mods
        self.dims = [m.dim for m in mods]
        self.field = mods[0].base.field
        n = 1
        for d in self.dims:
            n *= d
        self.q = QSpace(self.field, n, relation_rows(mods, relspecs))
        self.relspecs = tuple(relspecs)
        self.label = label

    @property
    def dim(self):
        return self.q.dim

    def project_t(self, v):
        return self.q.project(t_flatten(v, self.dims))

    def section_t(self, w):
        return t_unflatten(self.q.section(w), self.dims)

    def canon(self, v):
        """Canonical representative lift of a raw T-vector."""
        return self.section_t(self.project_t(v))

    def cut(self, cutspecs):
        """Subspace of reps where the named action pairs agree.

        cutspecs like relspecs; the condition is
        actA(b)@slotA (x) = actB(b)@slotB (x) for all b.
        """
        base = self.mods[0].base
        subs = []
        for (sa, na, sb, nb) in cutspecs:
            for b in range(base.dim):
                opa = slot_op(self.mods[sa].actions[na][b], sa, self.dims)
                opb = slot_op(self.mods[sb].actions[nb][b], sb, self.dims)
                d = descend(opa - opb, self.q, self.q)
                subs.append(kernel(d))
        if not subs:
            return _full_subspace(self.field, self.dim)
        return intersect(subs)

    def descend_slot_op(self, op, slot, target=None):
        """Push a one-slot operator down to reps (checking well-definedness)."""
        return descend(slot_op(op, slot, self.dims), self.q,
                       (target or self).q)


def _full_subspace(field, n):
    return Subspace.from_vectors(field, n,
                                 [{i: field.one} for i in range(n)])


def balanced_tensor(m, n, kind, extra_rel=()):
    """The balanced product of the given kind as a TensorQ."""
    na, nb = KINDS[kind]
    return TensorQ([m, n], [(0, na, 1, nb)] + list(extra_rel), label=kind)


def integral_sub(m, n):
    """{sum m_i (x) n_i : m_i.b~ (x) n_i = m_i (x) n_i.b for all b},
    as a subspace of the plain tensor space."""
    amb = TensorQ([m, n], [])
    return amb.cut([(0, "rightBbar", 1, "rightB")])


class TakeuchiSpace:
    """A balanced quotient together with a centralizer cut inside it.

    ``space`` is the TensorQ carrier; ``cut`` the subspace of its reps
    satisfying the matching condition; elements of the Takeuchi product are
    coordinates in the echelon basis of ``cut``.
    """

    def __init__(self, space, cutspecs):
        self.space = space
        self.cutspecs = tuple(cutspecs)
        self.cut = space.cut(cutspecs)

    @property
    def dim(self):
        return self.cut.dim

    def member(self, reps_vec):
        return self.cut.contains(reps_vec)

    def coords(self, reps_vec):
        return self.cut.coords(reps_vec)

    def expand(self, coords):
        """Cut coordinates -> reps vector."""
        basis = self.cut.basis()
        out = {}
        for k, c in coords.items():
            out = vaddmul(out, c, basis[k])
        return out

    def restricted_action(self, slot, name):
        """The action of the base through ``name`` on ``slot``, restricted to
        the cut (one Lin per base basis element).  Verifies the action
        descends and preserves the cut."""
        sp = self.space
        mats = []
        for b in range(sp.mods[slot].base.dim):
            op = sp.descend_slot_op(sp.mods[slot].actions[name][b], slot)
            cols = []
            for r in self.cut.basis():
                w = op.apply(r)
                cols.append(self.cut.coords(w))  # raises if cut not preserved
            mats.append(Lin(sp.field, self.dim, self.dim, cols))
        return mats

    def as_module(self, names, label="T"):
        """The cut space as a MultiModule via residual actions.

        ``names`` maps an action name to (slot, action name on that slot).
        """
        from .algebra import MultiModule
        acts = {new: _combine(self.restricted_action(slot, old))
                for new, (slot, old) in names.items()}
        return MultiModule(self.space.mods[0].base, self.dim,
                           {k: v for k, v in acts.items()},
                           label=label, check=False)


def _combine(mats):
    return mats


def takeuchi(m, n, label="x"):
    """The subspace of m diamond n where the residual right actions agree."""
    sp = balanced_tensor(m, n, "DiamondB")
    sp.label = label
    return TakeuchiSpace(sp, [(0, "rightBbar", 1, "rightB")])


class TripleTakeuchi:
    """The three-factor Takeuchi space with its two comparison maps.

    The carrier is the quotient of M (x) P (x) N by the diamond relations in
    slots (0,1) and (1,2); the cut matches the residual right actions of M
    against P and of P against N.  ``alpha`` maps the iterated product
    (M x P) x N into it, ``alpha_prime`` maps M x (P x N); both act as the
    identity on representative tensors.
    """

    def __init__(self, m, p, n):
        self.m, self.p, self.n = m, p, n
        self.space = TensorQ([m, p, n],
                             [(0, "leftBbar", 1, "leftB"),
                              (1, "leftBbar", 2, "leftB")],
                             label="triple")
        self.tak = TakeuchiSpace(self.space,
                                 [(0, "rightBbar", 1, "rightB"),
                                  (1, "rightBbar", 2, "rightB")])
        field = self.space.field
        # left-iterated product
        self.inner_left = takeuchi(m, p)
        mod_left = self.inner_left.as_module(
            {"leftBbar": (1, "leftBbar"), "rightBbar": (1, "rightBbar")},
            label="MxP")
        self.outer_left = takeuchi(mod_left, n)
        # right-iterated product
        self.inner_right = takeuchi(p, n)
        mod_right = self.inner_right.as_module(
            {"leftB": (0, "leftB"), "rightB": (0, "rightB")},
            label="PxN")
        self.outer_right = takeuchi(m, mod_right)
        self.alpha = self._comparison(left=True)
        self.alpha_prime = self._comparison(left=False)

    def _comparison(self, left):
        field = self.space.field
        inner = self.inner_left if left else self.inner_right
        outer = self.outer_left if left else self.outer_right
        cols = []
        for k in range(outer.dim):
            reps = outer.expand({k: field.one})
            amb = outer.space.section_t(reps)  # slots: (cut idx, other)
            raw3 = {}
            for key, c in amb.items():
                if left:
                    ci, nn = key
                    inner_reps = inner.expand({ci: field.one})
                    pair = inner.space.section_t(inner_reps)
                    for (mm, pp), c2 in pair.items():
                        raw3 = t_add(raw3, {(mm, pp, nn): c * c2})
                else:
                    mm, ci = key
                    inner_reps = inner.expand({ci: field.one})
                    pair = inner.space.section_t(inner_reps)
                    for (pp, nn), c2 in pair.items():
                        raw3 = t_add(raw3, {(mm, pp, nn): c * c2})
            w = self.space.project_t(raw3)
            cols.append(self.tak.coords(w))  # must land in the triple cut
        return Lin(field, self.tak.dim, outer.dim, cols)

    def alpha_bijective(self):
        try:
            invert(self.alpha)
            invert(self.alpha_prime)
        except Exception:
            return False
        return True


def triple_takeuchi(m, p, n):
    return TripleTakeuchi(m, p, n)
