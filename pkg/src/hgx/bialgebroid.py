"""Left bialgebroids over a base algebra, with Hopf structure via inversion.

The coproduct of a left bialgebroid lands in a Takeuchi subspace of a
balanced quotient, and its iterated versions live in three genuinely
different spaces bridged only by the comparison maps; this module keeps that
distinction explicit.  All axioms and the two shorthand-table identity
catalogs are verified exhaustively on basis elements with exact arithmetic.

Shorthand tables:
  pm_table[X]      = the class X+ (x) X-     (inverse of the product-split map)
  bracket_table[X] = the class X[-] (x) X[+] (inverse of the mirrored map)
"""

from __future__ import annotations

from .algebra import BeRing, AlgebraMorphism, ValidationError
from .linalg import Lin, NotBijective, NotWellDefined, invert, vscale, vadd
from .report import Report
from .tensor import (TensorQ, TakeuchiSpace, TripleTakeuchi, t_add, t_sub,
                     t_scale, t_tensor, t_subst, t_mul, t_perm, t_act,
                     t_flatten, t_unflatten)


class CoproductNotInTakeuchi(ValidationError):
    pass


class NotCoassociative(ValidationError):
    pass


class CounitLawFails(ValidationError):
    pass


class NotAlgebraMap(ValidationError):
    pass


class NotLeftHopf(ValidationError):
    pass


class NotAntiLeftHopf(ValidationError):
    pass


def v2t(vec):
    """Vec over a basis -> arity-1 T-vector."""
    return {(i,): c for i, c in vec.items()}


def t2v(tv):
    return {k[0]: c for k, c in tv.items()}


def tbl(table, x):
    """Linear extension of a per-basis table to a coordinate vector."""
    out = {}
    for i, c in x.items():
        out = t_add(out, t_scale(c, table[i]))
    return out


class LeftBialgebroid:
    """A validated left bialgebroid (ring, coproduct, counit)."""

    def __init__(self, ring, delta_table, eps_table, label="L", check=True):
        self.ring = ring
        self.base = ring.base
        self.alg = ring.total
        self.field = ring.base.field
        self.label = label
        self.mod = ring.module()
        self._spaces = {}
        self._cuts = {}
        self.q2 = self.space(2, ((0, "leftBbar", 1, "leftB"),))
        self.tak2 = self.takeuchi_cut(
            self.q2, ((0, "rightBbar", 1, "rightB"),))
        # canonical representative lifts of the coproduct
        self.delta = [self.q2.canon(d) for d in delta_table]
        self.eps = list(eps_table)
        # arity-1 T-vector views used by slot substitution
        self.eps_t = [v2t(e) for e in self.eps]
        self.s_t = [v2t(c) for c in ring.src.lin.cols]
        self.t_t = [v2t(c) for c in ring.tgt.lin.cols]
        self.trip = None
        self.delta3 = None
        self._delta4 = None
        self._hopf = None
        self._anti = None
        if check:
            self.validate()

    # ------------------------------------------------------------ spaces

    def space(self, arity, relspecs):
        key = (arity, tuple(relspecs))
        if key not in self._spaces:
            self._spaces[key] = TensorQ([self.mod] * arity, list(relspecs))
        return self._spaces[key]

    def takeuchi_cut(self, sp, cutspecs):
        key = (id(sp), tuple(cutspecs))
        if key not in self._cuts:
            self._cuts[key] = TakeuchiSpace(sp, list(cutspecs))
        return self._cuts[key]

    # convenience: frequently used quotients
    def q_tensor_bbar(self):
        return self.space(2, ((0, "rightBbar", 1, "leftBbar"),))

    def q_cotensor_b(self):
        return self.space(2, ((0, "leftB", 1, "rightB"),))

    # -------------------------------------------------------- structure ops

    def dX(self, x):
        """Coproduct of a coordinate vector, canonical arity-2 lift."""
        return tbl(self.delta, x)

    def epsX(self, x):
        out = {}
        for i, c in x.items():
            out = vadd(out, vscale(c, self.eps[i]))
        return out

    def s_of(self, b):
        return self.ring.src.lin.apply(b)

    def t_of(self, b):
        return self.ring.tgt.lin.apply(b)

    def act(self, name, b, slot, tv):
        """Apply the named base action of basis element b to one slot."""
        return t_act(tv, slot, self.mod.actions[name][b])

    def unit_t(self, arity):
        out = v2t(self.alg.unit)
        for _ in range(arity - 1):
            out = t_tensor(out, v2t(self.alg.unit))
        return out

    # ------------------------------------------------------------ towers

    def _build_triple(self):
        if self.trip is None:
            self.trip = TripleTakeuchi(self.mod, self.mod, self.mod)
        return self.trip

    def delta3_table(self):
        if self.delta3 is None:
            trip = self._build_triple()
            self.delta3 = [trip.space.canon(t_subst(d, 0, self.delta))
                           for d in self.delta]
        return self.delta3

    def delta4_table(self):
        if self._delta4 is None:
            q4 = self.space(4, ((0, "leftBbar", 1, "leftB"),
                                (1, "leftBbar", 2, "leftB"),
                                (2, "leftBbar", 3, "leftB")))
            self._delta4 = [q4.canon(t_subst(d, 0, self.delta))
                            for d in self.delta3_table()]
        return self._delta4

    # -------------------------------------------------------- validation

    def validate(self):
        f = self.field
        n = self.alg.dim
        one = f.one
        # coproduct lands in the Takeuchi subspace
        for i in range(n):
            w = self.q2.project_t(self.delta[i])
            if not self.tak2.cut.contains(w):
                raise CoproductNotInTakeuchi(
                    "coproduct image leaves the matching subspace",
                    witness=i)
        # bimodule maps: Delta(s(b)X) = s(b) on slot 0, Delta(t(b)X) = t(b)
        # on slot 1; counit is a bimodule map for the same structure.
        for b in range(self.base.dim):
            for i in range(n):
                x = {i: one}
                sx = self.mod.act("leftB", {b: one}, x)
                lhs = self.q2.project_t(self.dX(sx))
                rhs = self.q2.project_t(
                    self.act("leftB", b, 0, self.delta[i]))
                if lhs != rhs:
                    raise NotAlgebraMap("coproduct not left-source-linear",
                                        witness=(b, i))
                tx = self.mod.act("leftBbar", {b: one}, x)
                lhs = self.q2.project_t(self.dX(tx))
                rhs = self.q2.project_t(
                    self.act("leftBbar", b, 1, self.delta[i]))
                if lhs != rhs:
                    raise NotAlgebraMap("coproduct not target-linear",
                                        witness=(b, i))
                if self.epsX(sx) != self.base.mul({b: one}, self.eps[i]):
                    raise CounitLawFails("counit not left-linear",
                                         witness=(b, i))
                if self.epsX(tx) != self.base.mul(self.eps[i], {b: one}):
                    raise CounitLawFails("counit not right-linear",
                                         witness=(b, i))
        # counit laws:  eps(X1).X2 = X  and  X1.t(eps(X2)) = X
        for i in range(n):
            d = self.delta[i]
            lhs = t2v(t_mul(t_subst(t_subst(d, 0, self.eps_t), 0,
                                    self.s_t), 0, 1, self.alg))
            if lhs != {i: one}:
                raise CounitLawFails("first counit law fails", witness=i)
            rhs = t2v(t_mul(t_subst(t_subst(d, 1, self.eps_t), 1,
                                    self.t_t), 1, 0, self.alg))
            if rhs != {i: one}:
                raise CounitLawFails("second counit law fails", witness=i)
        # coproduct is an algebra map into the Takeuchi product
        u = self.q2.project_t(self.dX(self.alg.unit))
        if u != self.q2.project_t(self.unit_t(2)):
            raise NotAlgebraMap("coproduct does not preserve the unit")
        for i in range(n):
            for j in range(n):
                prod = pair_mul(self.delta[i], self.delta[j], self.alg)
                lhs = self.q2.project_t(prod)
                rhs = self.q2.project_t(self.dX(self.alg.basis_mul(i, j)))
                if lhs != rhs:
                    raise NotAlgebraMap("coproduct not multiplicative",
                                        witness=(i, j))
        # counit: left character
        if self.epsX(self.alg.unit) != self.base.unit:
            raise CounitLawFails("counit of unit is not the base unit")
        for i in range(n):
            for j in range(n):
                x, y = {i: one}, {j: one}
                exy = self.epsX(self.alg.mul(x, y))
                via_s = self.epsX(self.alg.mul(x, self.s_of(self.epsX(y))))
                via_t = self.epsX(self.alg.mul(x, self.t_of(self.epsX(y))))
                if not (exy == via_s == via_t):
                    raise CounitLawFails("left character law fails",
                                         witness=(i, j))
        # induced endomorphism map is multiplicative
        for i in range(n):
            for j in range(n):
                for b in range(self.base.dim):
                    inner = self.epsX(self.alg.mul({j: one},
                                                   self.s_of({b: one})))
                    lhs = self.epsX(self.alg.mul({i: one}, self.s_of(inner)))
                    rhs = self.epsX(self.alg.mul(self.alg.basis_mul(i, j),
                                                 self.s_of({b: one})))
                    if lhs != rhs:
                        raise CounitLawFails(
                            "induced endomorphism not multiplicative",
                            witness=(i, j, b))
        self._check_coassociativity()

    def _check_coassociativity(self):
        f = self.field
        trip = self._build_triple()
        one = f.one
        # left route: expand the first leg, land in (L x L) x L, then bridge
        left_outer = trip.outer_left
        right_outer = trip.outer_right
        for i in range(self.alg.dim):
            lhs = self._route_coords(i, trip, left=True)
            rhs = self._route_coords(i, trip, left=False)
            if trip.alpha.apply(lhs) != trip.alpha_prime.apply(rhs):
                raise NotCoassociative("coassociativity fails", witness=i)
        # cache towers now that both routes agree
        self.delta3_table()

    def _route_coords(self, i, trip, left):
        """(Delta x id)Delta resp. (id x Delta)Delta as coordinates in the
        corresponding iterated product space."""
        inner = trip.inner_left if left else trip.inner_right
        outer = trip.outer_left if left else trip.outer_right
        d = self.delta[i]
        amb = {}
        for (a, b), c in d.items():
            slot = a if left else b
            w = inner.space.project_t(self.delta[slot])
            co = inner.coords(w)
            for k, ck in co.items():
                key = (k, b) if left else (a, k)
                amb = t_add(amb, {key: c * ck})
        w = outer.space.project_t(amb)
        return outer.coords(w)

    # ------------------------------------------------------------ co-opposite

    def cop(self):
        """The same algebra viewed as a bialgebroid over the opposite base,
        with source/target and the coproduct legs exchanged."""
        ring = BeRing(self.base_op(), self.alg,
                      AlgebraMorphism(self.base_op(), self.alg,
                                      self.ring.tgt.lin, check=False),
                      AlgebraMorphism(self.base, self.alg,
                                      self.ring.src.lin, check=False),
                      check=False)
        flipped = [t_perm(d, [1, 0]) for d in self.delta]
        return LeftBialgebroid(ring, flipped, self.eps,
                               label=self.label + "~cop")

    def base_op(self):
        return self.ring.base_op

    # ------------------------------------------------------------ Hopf

    def hopf(self):
        if self._hopf is None:
            self._hopf = galois_lambda(self)
        return self._hopf

    def anti_hopf(self):
        if self._anti is None:
            self._anti = galois_mu(self)
        return self._anti


def pair_mul(u, v, alg):
    """Slotwise product of two arity-2 T-vectors."""
    out = {}
    for (a, b), c in u.items():
        for (x, y), d in v.items():
            p = alg.basis_mul(a, x)
            q = alg.basis_mul(b, y)
            cd = c * d
            for k1, c1 in p.items():
                for k2, c2 in q.items():
                    key = (k1, k2)
                    s = out.get(key)
                    s = cd * c1 * c2 if s is None else s + cd * c1 * c2
                    if s:
                        out[key] = s
                    else:
                        out.pop(key, None)
    return out


class LeftHopfStructure:
    """Inverse data for the split map (X,Y) -> X1 (x) X2 Y."""

    def __init__(self, lbg, lam, lam_inv, pm_table):
        self.lbg = lbg
        self.lam = lam
        self.lam_inv = lam_inv
        self.pm_table = pm_table  # list of arity-2 canonical lifts


class AntiLeftHopfStructure:
    def __init__(self, lbg, mu, mu_inv, bracket_table):
        self.lbg = lbg
        self.mu = mu
        self.mu_inv = mu_inv
        self.bracket_table = bracket_table  # X[-] (x) X[+] lifts


def _flat_bilinear(lbg, fn):
    """Build the Lin on the flat two-slot space from a basis-pair rule."""
    n = lbg.alg.dim
    f = lbg.field
    cols = []
    for i in range(n):
        for j in range(n):
            cols.append(t_flatten(fn(i, j), [n, n]))
    return Lin(f, n * n, n * n, cols)


def galois_lambda(lbg):
    one = lbg.field.one
    qdom = lbg.q_tensor_bbar()
    raw = _flat_bilinear(
        lbg, lambda i, j: t_mul(t_subst({(i, j): one}, 0, lbg.delta),
                                1, 2, lbg.alg))
    try:
        lam = _descend_flat(raw, qdom, lbg.q2)
    except NotWellDefined as e:
        raise NotLeftHopf("split map ill-defined: %s" % e) from e
    if qdom.dim != lbg.q2.dim:
        raise NotLeftHopf("domain and codomain dimensions differ")
    try:
        lam_inv = invert(lam)
    except NotBijective as e:
        raise NotLeftHopf("split map is singular") from e
    pm = []
    for i in range(lbg.alg.dim):
        w = lbg.q2.project_t(t_tensor({(i,): one}, v2t(lbg.alg.unit)))
        pm.append(qdom.section_t(lam_inv.apply(w)))
    return LeftHopfStructure(lbg, lam, lam_inv, pm)


def galois_mu(lbg):
    one = lbg.field.one
    qdom = lbg.q_cotensor_b()
    raw = _flat_bilinear(
        lbg, lambda i, j: t_mul(t_subst({(i, j): one}, 1, lbg.delta),
                                1, 0, lbg.alg))
    try:
        mu = _descend_flat(raw, qdom, lbg.q2)
    except NotWellDefined as e:
        raise NotAntiLeftHopf("mirrored split map ill-defined: %s" % e) from e
    if qdom.dim != lbg.q2.dim:
        raise NotAntiLeftHopf("domain and codomain dimensions differ")
    try:
        mu_inv = invert(mu)
    except NotBijective as e:
        raise NotAntiLeftHopf("mirrored split map is singular") from e
    bk = []
    for i in range(lbg.alg.dim):
        w = lbg.q2.project_t(t_tensor(v2t(lbg.alg.unit), {(i,): one}))
        bk.append(qdom.section_t(mu_inv.apply(w)))
    return AntiLeftHopfStructure(lbg, mu, mu_inv, bk)


def _descend_flat(raw, qdom, qcod):
    from .linalg import descend
    return descend(raw, qdom.q, qcod.q)


# ---------------------------------------------------------------- suites

def _eq_in(lbg, sp, lhs, rhs):
    return sp.project_t(lhs) == sp.project_t(rhs)


def verify_left_hopf_identities(lbg, hopf):
    """The ten-identity catalog for the plus/minus shorthand table."""
    rep = Report("hopf-plus")
    one = lbg.field.one
    alg = lbg.alg
    n = alg.dim
    pm = hopf.pm_table
    D = lbg.delta
    q_bbar = lbg.q_tensor_bbar()

    # 1: X+(1) <> X+(2)X-  =  X <> 1
    for i in range(n):
        v = t_mul(t_subst(pm[i], 0, D), 1, 2, alg)
        ok = _eq_in(lbg, lbg.q2, v, t_tensor({(i,): one}, v2t(alg.unit)))
        rep.add("lam-01", "X+(1)*X+(2)X-=X*1", ok, None if ok else i)

    # 2: X(1)+ (x) X(1)-X(2)  =  X (x) 1
    for i in range(n):
        v = t_mul(t_subst(D[i], 0, pm), 1, 2, alg)
        ok = _eq_in(lbg, q_bbar, v, t_tensor({(i,): one}, v2t(alg.unit)))
        rep.add("lam-02", "X(1)+oX(1)-X(2)=Xo1", ok, None if ok else i)

    # 3: (XY)+ (x) (XY)-  =  X+Y+ (x) Y-X-
    for i in range(n):
        for j in range(n):
            lhs = tbl(pm, alg.basis_mul(i, j))
            w = t_perm(t_tensor(pm[i], pm[j]), [0, 2, 3, 1])
            rhs = t_mul(t_mul(w, 0, 1, alg), 1, 2, alg)
            ok = _eq_in(lbg, q_bbar, lhs, rhs)
            rep.add("lam-03", "(XY)+o(XY)-=X+Y+oY-X-", ok,
                    None if ok else (i, j))

    # 4: unit
    ok = _eq_in(lbg, q_bbar, tbl(pm, alg.unit), lbg.unit_t(2))
    rep.add("lam-04", "1+o1-=1o1", ok)

    # 5: X+(1) <> X+(2) (x) X-  =  X(1) <> X(2)+ (x) X(2)-
    sp5 = lbg.space(3, ((0, "leftBbar", 1, "leftB"),
                        (1, "rightBbar", 2, "leftBbar")))
    for i in range(n):
        lhs = t_subst(pm[i], 0, D)
        rhs = t_subst(D[i], 1, pm)
        ok = _eq_in(lbg, sp5, lhs, rhs)
        rep.add("lam-05", "X+(1)<>X+(2)oX-", ok, None if ok else i)

    # 6: X+ (x) X-(1) (x) X-(2)  =  X++ (x) X- (x) X+-   (with matching cut)
    sp6 = lbg.space(3, ((0, "rightBbar", 2, "leftBbar"),
                        (1, "leftBbar", 2, "leftB")))
    cut6 = lbg.takeuchi_cut(sp6, ((0, "leftBbar", 2, "rightBbar"),
                                  (1, "rightBbar", 2, "rightB")))
    for i in range(n):
        lhs = t_subst(pm[i], 1, D)
        rhs = t_perm(t_subst(pm[i], 0, pm), [0, 2, 1])
        pl, pr = sp6.project_t(lhs), sp6.project_t(rhs)
        ok = (pl == pr and cut6.cut.contains(pl))
        rep.add("lam-06", "X+oX-(1)oX-(2)=X++oX-oX+- (cut)", ok,
                None if ok else i)

    # 7: X = X+ t(eps(X-))
    for i in range(n):
        v = t_subst(t_subst(pm[i], 1, lbg.eps_t), 1, lbg.t_t)
        ok = t2v(t_mul(v, 0, 1, alg)) == {i: one}
        rep.add("lam-07", "X=X+~eps(X-)", ok, None if ok else i)

    # 8: X+X- = s(eps(X))
    for i in range(n):
        lhs = t2v(t_mul(pm[i], 0, 1, alg))
        ok = lhs == lbg.s_of(lbg.eps[i])
        rep.add("lam-08", "X+X-=s(eps(X))", ok, None if ok else i)

    # 9: (s(a)t(a')X s(b)t(b'))+- table transforms by the four-action rule
    nb = lbg.base.dim
    for i in range(n):
        for a in range(nb):
            for a2 in range(nb):
                for b in range(nb):
                    for b2 in range(nb):
                        x = {i: one}
                        z = alg.mul(lbg.s_of({a: one}),
                                    alg.mul(lbg.t_of({a2: one}),
                                            alg.mul(x, alg.mul(
                                                lbg.s_of({b: one}),
                                                lbg.t_of({b2: one})))))
                        lhs = tbl(pm, z)
                        rhs = pm[i]
                        rhs = t_act(rhs, 0, lbg.mod.actions["leftB"][a])
                        rhs = t_act(rhs, 0, lbg.mod.actions["rightB"][b])
                        rhs = t_act(rhs, 1, lbg.mod.actions["leftB"][b2])
                        rhs = t_act(rhs, 1, lbg.mod.actions["rightB"][a2])
                        ok = _eq_in(lbg, q_bbar, lhs, rhs)
                        rep.add("lam-09", "four-action rule", ok,
                                None if ok else (i, a, a2, b, b2))

    # 10: t(b)X+ (x) X-  =  X+ (x) X- t(b)
    for i in range(n):
        for b in range(lbg.base.dim):
            lhs = t_act(pm[i], 0, lbg.mod.actions["leftBbar"][b])
            rhs = t_act(pm[i], 1, lbg.mod.actions["rightBbar"][b])
            ok = _eq_in(lbg, q_bbar, lhs, rhs)
            rep.add("lam-10", "t(b)X+oX-=X+oX-t(b)", ok,
                    None if ok else (i, b))
    return rep


def verify_anti_left_identities(lbg, anti):
    rep = Report("hopf-bracket")
    one = lbg.field.one
    alg = lbg.alg
    n = alg.dim
    bk = anti.bracket_table  # slots (X[-], X[+])
    D = lbg.delta
    q_cob = lbg.q_cotensor_b()

    # 1: X[+](1)X[-] <> X[+](2)  =  1 <> X
    for i in range(n):
        v = t_mul(t_subst(bk[i], 1, D), 1, 0, alg)
        ok = _eq_in(lbg, lbg.q2, v, t_tensor(v2t(alg.unit), {(i,): one}))
        rep.add("mu-01", "X[+](1)X[-]<>X[+](2)=1<>X", ok, None if ok else i)

    # 2: X(2)[-]X(1) (x) X(2)[+]  =  1 (x) X
    for i in range(n):
        v = t_mul(t_subst(D[i], 1, bk), 1, 0, alg)
        ok = _eq_in(lbg, q_cob, v, t_tensor(v2t(alg.unit), {(i,): one}))
        rep.add("mu-02", "X(2)[-]X(1)oX(2)[+]=1oX", ok, None if ok else i)

    # 3: (XY)[-] (x) (XY)[+]  =  Y[-]X[-] (x) X[+]Y[+]
    for i in range(n):
        for j in range(n):
            lhs = tbl(bk, alg.basis_mul(i, j))
            w = t_perm(t_tensor(bk[i], bk[j]), [2, 0, 1, 3])
            rhs = t_mul(t_mul(w, 0, 1, alg), 1, 2, alg)
            ok = _eq_in(lbg, q_cob, lhs, rhs)
            rep.add("mu-03", "(XY)[-]o(XY)[+]=Y[-]X[-]oX[+]Y[+]", ok,
                    None if ok else (i, j))

    # 4: unit
    ok = _eq_in(lbg, q_cob, tbl(bk, alg.unit), lbg.unit_t(2))
    rep.add("mu-04", "1[-]o1[+]=1o1", ok)

    # 5: X[-] (x) X[+](1) <> X[+](2)  =  X(1)[-] (x) X(1)[+] <> X(2)
    sp5 = lbg.space(3, ((0, "leftB", 1, "rightB"),
                        (1, "leftBbar", 2, "leftB")))
    for i in range(n):
        lhs = t_subst(bk[i], 1, D)
        rhs = t_perm(t_subst(D[i], 0, bk), [0, 1, 2])
        ok = _eq_in(lbg, sp5, lhs, rhs)
        rep.add("mu-05", "X[-]oX[+](1)<>X[+](2)", ok, None if ok else i)

    # 6: X[-](1) (x) X[-](2) (x) X[+]  =  X[+][-] (x) X[-] (x) X[+][+]
    sp6 = lbg.space(3, ((0, "leftB", 2, "rightB"),
                        (0, "leftBbar", 1, "leftB")))
    cut6 = lbg.takeuchi_cut(sp6, ((0, "rightB", 2, "leftB"),
                                  (0, "rightBbar", 1, "rightB")))
    for i in range(n):
        lhs = t_subst(bk[i], 0, D)
        rhs = t_perm(t_subst(bk[i], 1, bk), [1, 0, 2])
        pl, pr = sp6.project_t(lhs), sp6.project_t(rhs)
        ok = (pl == pr and cut6.cut.contains(pl))
        rep.add("mu-06", "X[-](1)oX[-](2)oX[+] (cut)", ok, None if ok else i)

    # 7: X = X[+] s(eps(X[-]))
    for i in range(n):
        v = t_subst(t_subst(bk[i], 0, lbg.eps_t), 0, lbg.s_t)
        ok = t2v(t_mul(v, 1, 0, alg)) == {i: one}
        rep.add("mu-07", "X=X[+]eps(X[-])", ok, None if ok else i)

    # 8: X[+]X[-] = t(eps(X))
    for i in range(n):
        lhs = t2v(t_mul(bk[i], 1, 0, alg))
        ok = lhs == lbg.t_of(lbg.eps[i])
        rep.add("mu-08", "X[+]X[-]=t(eps(X))", ok, None if ok else i)

    # 9: (s(a)t(a')Xs(b)t(b'))[-+] = t(b)X[-]t(a) (x) t(a')X[+]t(b')
    nb = lbg.base.dim
    for i in range(n):
        for a in range(nb):
            for a2 in range(nb):
                for b in range(nb):
                    for b2 in range(nb):
                        x = {i: one}
                        z = alg.mul(lbg.s_of({a: one}),
                                    alg.mul(lbg.t_of({a2: one}),
                                            alg.mul(x, alg.mul(
                                                lbg.s_of({b: one}),
                                                lbg.t_of({b2: one})))))
                        lhs = tbl(bk, z)
                        rhs = bk[i]
                        rhs = t_act(rhs, 0, lbg.mod.actions["leftBbar"][b])
                        rhs = t_act(rhs, 0, lbg.mod.actions["rightBbar"][a])
                        rhs = t_act(rhs, 1, lbg.mod.actions["leftBbar"][a2])
                        rhs = t_act(rhs, 1, lbg.mod.actions["rightBbar"][b2])
                        ok = _eq_in(lbg, q_cob, lhs, rhs)
                        rep.add("mu-09", "four-action rule", ok,
                                None if ok else (i, a, a2, b, b2))

    # 10: X[-]s(b) (x) X[+]  =  X[-] (x) s(b)X[+]
    for i in range(n):
        for b in range(lbg.base.dim):
            lhs = t_act(bk[i], 0, lbg.mod.actions["rightB"][b])
            rhs = t_act(bk[i], 1, lbg.mod.actions["leftB"][b])
            ok = _eq_in(lbg, q_cob, lhs, rhs)
            rep.add("mu-10", "X[-]s(b)oX[+]=X[-]os(b)X[+]", ok,
                    None if ok else (i, b))
    return rep


def verify_mixed_identities(lbg, hopf, anti):
    rep = Report("hopf-mixed")
    alg = lbg.alg
    n = alg.dim
    pm, bk, D = hopf.pm_table, anti.bracket_table, lbg.delta

    # 1: X[+] (x) X[-]+ (x) X[-]-  =  X(2)[+] (x) X(2)[-] (x) X(1)
    sp1 = lbg.space(3, ((0, "rightB", 1, "leftB"),
                        (1, "rightBbar", 2, "leftBbar")))
    for i in range(n):
        lhs = t_perm(t_subst(bk[i], 0, pm), [2, 0, 1])
        rhs = t_perm(t_subst(D[i], 1, bk), [2, 1, 0])
        ok = _eq_in(lbg, sp1, lhs, rhs)
        rep.add("mix-1", "X[+]oX[-]+oX[-]-", ok, None if ok else i)

    # 2: X+ (x) X-[+] (x) X-[-]  =  X(1)+ (x) X(1)- (x) X(2)
    sp2 = lbg.space(3, ((0, "rightBbar", 1, "leftBbar"),
                        (1, "rightB", 2, "leftB")))
    for i in range(n):
        lhs = t_perm(t_subst(pm[i], 1, bk), [0, 2, 1])
        rhs = t_subst(D[i], 0, pm)
        ok = _eq_in(lbg, sp2, lhs, rhs)
        rep.add("mix-2", "X+oX-[+]oX-[-]", ok, None if ok else i)

    # 3: X[+]+ (x) X[-] (x) X[+]-  =  X+[+] (x) X+[-] (x) X-  (with cut)
    sp3 = lbg.space(3, ((0, "rightBbar", 2, "leftBbar"),
                        (0, "rightB", 1, "leftB")))
    cut3 = lbg.takeuchi_cut(sp3, ((0, "leftB", 1, "rightB"),
                                  (0, "leftBbar", 2, "rightBbar")))
    for i in range(n):
        lhs = t_perm(t_subst(bk[i], 1, pm), [1, 0, 2])
        rhs = t_perm(t_subst(pm[i], 0, bk), [1, 0, 2])
        pl, pr = sp3.project_t(lhs), sp3.project_t(rhs)
        ok = (pl == pr and cut3.cut.contains(pl))
        rep.add("mix-3", "X[+]+oX[-]oX[+]- (cut)", ok, None if ok else i)
    return rep
