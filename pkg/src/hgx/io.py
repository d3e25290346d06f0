"""Serialization of models to versioned structured-text documents.

One object per file, JSON surface syntax, every scalar an exact string
("3", "-1/2"), matrices row-major and dense.  Parsing either produces a
validated in-memory object or raises a positioned error naming the field;
``serialize(parse(text)) == text`` on canonical documents.
"""

from __future__ import annotations

import json

from .algebra import (FiniteDimAlgebra, AlgebraMorphism, BeRing,
                      trivial_base, ValidationError)
from .bialgebroid import LeftBialgebroid
from .fields import Field, FieldError, QQ
from .linalg import Lin

SCHEMA_VERSION = "1"

KINDS = ("bialgebroid", "cocycle", "pairing", "sigma", "measuring",
         "crossed")


class DocumentError(ValueError):
    """A positioned error in a model document."""

    def __init__(self, msg, path=()):
        self.path = tuple(path)
        self.msg = msg
        where = "/".join(str(p) for p in self.path) or "(document)"
        super().__init__("%s: %s" % (where, msg))


class SyntaxError(DocumentError):      # noqa: A001 - module-local by design
    pass


class SchemaError(DocumentError):
    pass


class ModelDocument:
    """A parsed, schema-checked document; ``data`` is canonical JSON-able."""

    def __init__(self, data):
        self.data = data

    @property
    def kind(self):
        return self.data["kind"]

    @property
    def label(self):
        return self.data.get("label", "")

    def field(self):
        return field_from_mode(self.data["field_mode"])


def field_from_mode(mode):
    if mode == "rationals":
        return QQ
    if isinstance(mode, dict) and set(mode) == {"prime"}:
        try:
            return Field(mode["prime"])
        except FieldError as e:
            raise SchemaError(str(e), ("field_mode",)) from e
    raise SchemaError("unrecognized field mode %r" % (mode,),
                      ("field_mode",))


def parse(text):
    """Parse document text; syntax errors carry the line/column."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise SyntaxError("line %d column %d: %s"
                          % (e.lineno, e.colno, e.msg)) from e
    if not isinstance(data, dict):
        raise SchemaError("document must be a single object")
    for key in ("schema_version", "kind", "field_mode"):
        if key not in data:
            raise SchemaError("missing required field", (key,))
    if data["schema_version"] != SCHEMA_VERSION:
        raise SchemaError("unsupported schema version %r"
                          % (data["schema_version"],), ("schema_version",))
    if data["kind"] not in KINDS:
        raise SchemaError("unknown document kind %r" % (data["kind"],),
                          ("kind",))
    doc = ModelDocument(data)
    doc.field()          # validates the mode eagerly
    return doc


def serialize(doc):
    """Canonical text form: stable key order, two-space indent."""
    return json.dumps(doc.data, indent=2, sort_keys=True) + "\n"


def load(path):
    with open(path, "r", encoding="utf-8") as fh:
        return parse(fh.read())


def save(doc, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize(doc))


# ------------------------------------------------------------ low-level

def _need(d, key, path):
    if not isinstance(d, dict) or key not in d:
        raise SchemaError("missing required field", path + (key,))
    return d[key]


def _int(v, path):
    if not isinstance(v, int) or isinstance(v, bool) or v < 0:
        raise SchemaError("expected a nonnegative integer, got %r" % (v,),
                          path)
    return v


def _scalar(f, s, path):
    if not isinstance(s, str):
        raise SchemaError("scalars must be strings, got %r" % (s,), path)
    try:
        return f.parse(s)
    except (FieldError, ValueError) as e:
        raise SchemaError("bad scalar %r (%s)" % (s, e), path) from e


def _vec(f, row, n, path):
    if not isinstance(row, list) or len(row) != n:
        raise SchemaError("expected a row of %d scalars" % n, path)
    out = {}
    for i, s in enumerate(row):
        c = _scalar(f, s, path + (i,))
        if c:
            out[i] = c
    return out


def _fmt_vec(f, vec, n):
    return [f.fmt(vec.get(i, f.zero)) for i in range(n)]


def _grid(f, m, nrows, ncols, width, path):
    """An nrows x ncols grid whose entries are dense width-vectors."""
    if not isinstance(m, list) or len(m) != nrows:
        raise SchemaError("expected %d rows" % nrows, path)
    out = []
    for r, row in enumerate(m):
        if not isinstance(row, list) or len(row) != ncols:
            raise SchemaError("expected %d entries" % ncols, path + (r,))
        out.append([_vec(f, cell, width, path + (r, c))
                    for c, cell in enumerate(row)])
    return out


def _matrix_cols(f, m, nrows, ncols, path):
    """A dense nrows x ncols scalar matrix, returned as a Lin by columns."""
    if not isinstance(m, list) or len(m) != nrows:
        raise SchemaError("expected %d rows" % nrows, path)
    cols = [dict() for _ in range(ncols)]
    for r, row in enumerate(m):
        if not isinstance(row, list) or len(row) != ncols:
            raise SchemaError("expected %d columns" % ncols, path + (r,))
        for c, s in enumerate(row):
            v = _scalar(f, s, path + (r, c))
            if v:
                cols[c][r] = v
    return Lin(f, nrows, ncols, cols)


def _fmt_matrix(f, lin):
    return [[f.fmt(lin.cols[c].get(r, f.zero)) for c in range(lin.ncols)]
            for r in range(lin.nrows)]


# ------------------------------------------------------------- algebras

def encode_algebra(f, alg):
    n = alg.dim
    return {
        "dim": n,
        "unit": _fmt_vec(f, alg.unit, n),
        "table": [[_fmt_vec(f, alg.table[i][j], n) for j in range(n)]
                  for i in range(n)],
    }


def decode_algebra(f, d, path, label="A", check=True):
    n = _int(_need(d, "dim", path), path + ("dim",))
    unit = _vec(f, _need(d, "unit", path), n, path + ("unit",))
    table = _grid(f, _need(d, "table", path), n, n, n, path + ("table",))
    return FiniteDimAlgebra(f, table, unit, label=label, check=check)


# --------------------------------------------------------- bialgebroids

def encode_bialgebroid(lbg):
    f = lbg.field
    nL, nB = lbg.alg.dim, lbg.base.dim
    data = {
        "schema_version": SCHEMA_VERSION,
        "kind": "bialgebroid",
        "field_mode": f.mode if f.p is None else {"prime": f.p},
        "label": lbg.label,
        "base_algebra": encode_algebra(f, lbg.base),
        "total_algebra": encode_algebra(f, lbg.alg),
        "source": _fmt_matrix(f, lbg.ring.src.lin),
        "target": _fmt_matrix(f, lbg.ring.tgt.lin),
        "counit": [[f.fmt(lbg.eps[x].get(b, f.zero)) for x in range(nL)]
                   for b in range(nB)],
        "coproduct": [[[f.fmt(lbg.delta[x].get((i, j), f.zero))
                        for j in range(nL)] for i in range(nL)]
                      for x in range(nL)],
    }
    if getattr(lbg, "antipode", None) is not None:
        data["antipode"] = list(lbg.antipode)
    return ModelDocument(data)


def decode_bialgebroid(doc, check=True):
    d = doc.data
    f = doc.field()
    base = decode_algebra(f, _need(d, "base_algebra", ()), ("base_algebra",),
                          label="B", check=check)
    alg = decode_algebra(f, _need(d, "total_algebra", ()),
                         ("total_algebra",), label=doc.label or "L",
                         check=check)
    nL, nB = alg.dim, base.dim
    src_lin = _matrix_cols(f, _need(d, "source", ()), nL, nB, ("source",))
    tgt_lin = _matrix_cols(f, _need(d, "target", ()), nL, nB, ("target",))
    src = AlgebraMorphism(base, alg, src_lin, check=check)
    tgt = AlgebraMorphism(base.opposite(), alg, tgt_lin, check=check)
    ring = BeRing(base, alg, src, tgt, check=check)
    epsm = _matrix_cols(f, _need(d, "counit", ()), nB, nL, ("counit",))
    eps = [epsm.cols[x] for x in range(nL)]
    cop = _need(d, "coproduct", ())
    if not isinstance(cop, list) or len(cop) != nL:
        raise SchemaError("expected %d coproduct rows" % nL, ("coproduct",))
    delta = []
    for x, mat in enumerate(cop):
        if not isinstance(mat, list) or len(mat) != nL:
            raise SchemaError("expected a %dx%d matrix" % (nL, nL),
                              ("coproduct", x))
        acc = {}
        for i, row in enumerate(mat):
            if not isinstance(row, list) or len(row) != nL:
                raise SchemaError("expected %d entries" % nL,
                                  ("coproduct", x, i))
            for j, s in enumerate(row):
                c = _scalar(f, s, ("coproduct", x, i, j))
                if c:
                    acc[(i, j)] = c
        delta.append(acc)
    lbg = LeftBialgebroid(ring, delta, eps, label=doc.label or "L",
                          check=check)
    if "antipode" in d:
        ap = d["antipode"]
        if (not isinstance(ap, list) or len(ap) != nL
                or sorted(ap) != list(range(nL))):
            raise SchemaError("antipode must be a permutation of 0..%d"
                              % (nL - 1), ("antipode",))
        lbg.antipode = list(ap)
    return lbg


# --------------------------------------------- base-valued bilinear forms

def _encode_form(f, form, nB):
    return [[_fmt_vec(f, cell, nB) for cell in row] for row in form]


def encode_cocycle(lbg, form, inverse_form=None, label="cocycle"):
    f = lbg.field
    nL, nB = lbg.alg.dim, lbg.base.dim
    data = {
        "schema_version": SCHEMA_VERSION,
        "kind": "cocycle",
        "field_mode": f.mode if f.p is None else {"prime": f.p},
        "label": label,
        "total_dim": nL,
        "base_dim": nB,
        "form": _encode_form(f, form, nB),
    }
    if inverse_form is not None:
        data["inverse_form"] = _encode_form(f, inverse_form, nB)
    return ModelDocument(data)


def decode_form(doc, lbg, key="form"):
    d = doc.data
    f = doc.field()
    nL = _int(_need(d, "total_dim", ()), ("total_dim",))
    nB = _int(_need(d, "base_dim", ()), ("base_dim",))
    if nL != lbg.alg.dim or nB != lbg.base.dim:
        raise SchemaError("dimensions %dx%d do not match the model (%dx%d)"
                          % (nL, nB, lbg.alg.dim, lbg.base.dim),
                          ("total_dim",))
    if key not in d:
        return None
    return _grid(f, d[key], nL, nL, nB, (key,))


def encode_pairing(lbg_l, lbg_pi, form, label="pairing"):
    f = lbg_l.field
    nB = lbg_l.base.dim
    data = {
        "schema_version": SCHEMA_VERSION,
        "kind": "pairing",
        "field_mode": f.mode if f.p is None else {"prime": f.p},
        "label": label,
        "left_dim": lbg_l.alg.dim,
        "right_dim": lbg_pi.alg.dim,
        "base_dim": nB,
        "form": _encode_form(f, form, nB),
    }
    return ModelDocument(data)


def decode_pairing(doc, lbg_l, lbg_pi):
    d = doc.data
    f = doc.field()
    nl = _int(_need(d, "left_dim", ()), ("left_dim",))
    np_ = _int(_need(d, "right_dim", ()), ("right_dim",))
    nB = _int(_need(d, "base_dim", ()), ("base_dim",))
    if (nl, np_, nB) != (lbg_l.alg.dim, lbg_pi.alg.dim, lbg_l.base.dim):
        raise SchemaError("pairing dimensions do not match the models",
                          ("left_dim",))
    if not isinstance(d.get("form"), list) or len(d["form"]) != nl:
        raise SchemaError("expected %d rows" % nl, ("form",))
    out = []
    for r, row in enumerate(d["form"]):
        if not isinstance(row, list) or len(row) != np_:
            raise SchemaError("expected %d entries" % np_, ("form", r))
        out.append([_vec(f, cell, nB, ("form", r, c))
                    for c, cell in enumerate(row)])
    return out


# --------------------------------------------------- crossed-product data

def encode_sigma(lbg, NA, sigma, label="sigma"):
    f = lbg.field
    nL, nN = lbg.alg.dim, NA.dim
    return ModelDocument({
        "schema_version": SCHEMA_VERSION,
        "kind": "sigma",
        "field_mode": f.mode if f.p is None else {"prime": f.p},
        "label": label,
        "total_dim": nL,
        "coefficient_algebra": encode_algebra(f, NA),
        "table": [[_fmt_vec(f, sigma[x][y], nN) for y in range(nL)]
                  for x in range(nL)],
    })


def encode_measuring(lbg, NA, act, label="measuring"):
    f = lbg.field
    nL, nN = lbg.alg.dim, NA.dim
    return ModelDocument({
        "schema_version": SCHEMA_VERSION,
        "kind": "measuring",
        "field_mode": f.mode if f.p is None else {"prime": f.p},
        "label": label,
        "total_dim": nL,
        "coefficient_algebra": encode_algebra(f, NA),
        "table": [[_fmt_vec(f, act[x][i], nN) for i in range(nN)]
                  for x in range(nL)],
    })


def decode_coefficient_table(doc, lbg, ncols=None, check=True):
    """Shared decoder for sigma/measuring/gauge payloads.

    Returns (NA, table) where table[r][c] is an NA-coordinate vector;
    sigma tables are nL x nL, measuring tables nL x nN.
    """
    d = doc.data
    f = doc.field()
    nL = _int(_need(d, "total_dim", ()), ("total_dim",))
    if nL != lbg.alg.dim:
        raise SchemaError("total dimension %d does not match the model (%d)"
                          % (nL, lbg.alg.dim), ("total_dim",))
    NA = decode_algebra(f, _need(d, "coefficient_algebra", ()),
                        ("coefficient_algebra",), label="N", check=check)
    nN = NA.dim
    if ncols is None:
        ncols = nL if doc.kind == "sigma" else nN
    table = _grid(f, _need(d, "table", ()), nL, ncols, nN, ("table",))
    return NA, table


def encode_crossed(lbg, NA, sigma, act, gauge=None, label="crossed"):
    f = lbg.field
    nL, nN = lbg.alg.dim, NA.dim
    data = {
        "schema_version": SCHEMA_VERSION,
        "kind": "crossed",
        "field_mode": f.mode if f.p is None else {"prime": f.p},
        "label": label,
        "bialgebroid": encode_bialgebroid(lbg).data,
        "coefficient_algebra": encode_algebra(f, NA),
        "sigma": [[_fmt_vec(f, sigma[x][y], nN) for y in range(nL)]
                  for x in range(nL)],
        "measuring": [[_fmt_vec(f, act[x][i], nN) for i in range(nN)]
                      for x in range(nL)],
    }
    if gauge is not None:
        data["gauge"] = [_fmt_vec(f, gauge[x], nN) for x in range(nL)]
    return ModelDocument(data)


def decode_crossed(doc, check=True):
    """Returns (lbg, NA, sigma_table, act_table, gauge_table_or_None)."""
    d = doc.data
    f = doc.field()
    sub = ModelDocument(_need(d, "bialgebroid", ()))
    for key in ("schema_version", "kind", "field_mode"):
        _need(sub.data, key, ("bialgebroid",))
    lbg = decode_bialgebroid(sub, check=check)
    NA = decode_algebra(f, _need(d, "coefficient_algebra", ()),
                        ("coefficient_algebra",), label="N", check=check)
    nL, nN = lbg.alg.dim, NA.dim
    sigma = _grid(f, _need(d, "sigma", ()), nL, nL, nN, ("sigma",))
    act = _grid(f, _need(d, "measuring", ()), nL, nN, nN, ("measuring",))
    gauge = None
    if "gauge" in d:
        g = d["gauge"]
        if not isinstance(g, list) or len(g) != nL:
            raise SchemaError("expected %d rows" % nL, ("gauge",))
        gauge = [_vec(f, row, nN, ("gauge", x))
                 for x, row in enumerate(g)]
    return lbg, NA, sigma, act, gauge


# ------------------------------------------------------------- builders

def build_group_cocycle(group_table, bicharacter, field=QQ,
                        label="group-cocycle"):
    """A base-valued two-cocycle document from a bicharacter matrix on a
    finite group; the inverse form is the entrywise reciprocal."""
    from .models import build_group_algebra
    lbg = build_group_algebra(group_table, field, label=label + "-model")
    n = lbg.alg.dim
    form = []
    inv = []
    for x in range(n):
        if len(bicharacter) != n or len(bicharacter[x]) != n:
            raise SchemaError("bicharacter must be %dx%d" % (n, n),
                              ("bicharacter",))
        row, irow = [], []
        for y in range(n):
            c = field.of(bicharacter[x][y])
            if not c:
                raise SchemaError("bicharacter values must be invertible",
                                  ("bicharacter", x, y))
            row.append({0: c})
            irow.append({0: field.one / c})
        form.append(row)
        inv.append(irow)
    return encode_cocycle(lbg, form, inverse_form=inv, label=label)


def build_pairing(group_table, bicharacter, field=QQ, label="group-pairing"):
    """A skew-pairing document from a bicharacter matrix on a finite
    group (both factors the same group model)."""
    from .models import build_group_algebra
    lbg = build_group_algebra(group_table, field, label=label + "-model")
    n = lbg.alg.dim
    form = []
    for x in range(n):
        if len(bicharacter) != n or len(bicharacter[x]) != n:
            raise SchemaError("bicharacter must be %dx%d" % (n, n),
                              ("bicharacter",))
        form.append([{0: field.of(bicharacter[x][y])} for y in range(n)])
    return encode_pairing(lbg, lbg, form, label=label)


# --------------------------------------------------------------- corpus

def corpus_documents(field=QQ):
    """The built-in corpus as (name, ModelDocument) pairs; every model
    passes every applicable verification suite."""
    from .models import (build_group_algebra, cyclic_group,
                         klein_group_algebra, base_qxq,
                         base_upper_triangular, build_enveloping_algebroid,
                         bicharacter_form, sign_pairing_form)
    from .algebra import trivial_base
    out = []
    z2 = build_group_algebra(cyclic_group(2), field, label="kZ2")
    z3 = build_group_algebra(cyclic_group(3), field, label="kZ3")
    z2z2 = klein_group_algebra(field)
    env_qxq = build_enveloping_algebroid(base_qxq(field))
    env_ut = build_enveloping_algebroid(base_upper_triangular(field))
    for name, lbg in (("z2", z2), ("z3", z3), ("z2z2", z2z2),
                      ("env_qxq", env_qxq), ("env_ut2", env_ut)):
        out.append((name, encode_bialgebroid(lbg)))
    kg = [[-1 if ((x % 2) * (y // 2)) % 2 else 1 for y in range(4)]
          for x in range(4)]
    out.append(("cocycle_minus", build_group_cocycle(
        product_table_klein(), kg, field, label="minus")))
    out.append(("cocycle_trivial_z2", build_group_cocycle(
        cyclic_group(2), [[1, 1], [1, 1]], field, label="trivial")))
    out.append(("pairing_sign_z2", build_pairing(
        cyclic_group(2), [[1, 1], [1, -1]], field, label="sign")))
    out.append(("pairing_trivial_z2", build_pairing(
        cyclic_group(2), [[1, 1], [1, 1]], field, label="trivial")))
    # the crossed-product fixture: sign cocycle, trivial action, N = k
    NA = trivial_base(field)
    one = field.one
    act = [[{0: one}], [{0: one}]]
    sigma = [[{0: one}, {0: one}], [{0: one}, {0: -one}]]
    out.append(("crossed_sign_z2",
                encode_crossed(z2, NA, sigma, act, label="kZ2#k")))
    out.append(("sigma_sign_z2", encode_sigma(z2, NA, sigma, label="sign")))
    out.append(("measuring_trivial_z2",
                encode_measuring(z2, NA, act, label="trivial")))
    from .cleft import check_measuring_cocycle, GaugeElement, gauge_transform
    meas, coc = check_measuring_cocycle(z2, NA, act, sigma)
    u = GaugeElement(z2, NA, [{0: one}, {0: field.of(6)}])
    meas2, coc2 = gauge_transform(coc, meas, u)
    out.append(("crossed_sign_z2_gauged",
                encode_crossed(z2, NA, coc2.sigma, meas2.act, gauge=u.u,
                               label="kZ2#k-gauged")))
    return out


def product_table_klein():
    from .models import cyclic_group, product_group
    return product_group(cyclic_group(2), cyclic_group(2))


def broken_documents(field=QQ):
    """Deliberately broken fixtures, as (name, text, expected error class
    name) triples; each fails with the designated error and a witness."""
    from .models import build_group_algebra, cyclic_group
    z2 = build_group_algebra(cyclic_group(2), field, label="kZ2")
    out = []
    out.append(("broken_syntax", "{ not json", "SyntaxError"))
    good = encode_bialgebroid(z2)
    d = json.loads(serialize(good))
    d["total_algebra"]["unit"][0] = "1/0"
    out.append(("broken_scalar", json.dumps(d, indent=2, sort_keys=True),
                "SchemaError"))
    d = json.loads(serialize(good))
    del d["counit"]
    out.append(("broken_missing_counit",
                json.dumps(d, indent=2, sort_keys=True), "SchemaError"))
    d = json.loads(serialize(good))
    d["total_algebra"]["table"][1][1] = ["1", "1"]  # g*g = 1 + g: not a unit
    out.append(("broken_algebra", json.dumps(d, indent=2, sort_keys=True),
                "NotAlgebraMap"))
    d = json.loads(serialize(good))
    d["coproduct"][1] = [["0", "1"], ["0", "0"]]    # not coassociative-legal
    out.append(("broken_coproduct", json.dumps(d, indent=2, sort_keys=True),
                "CounitLawFails"))
    coc = build_group_cocycle(cyclic_group(2), [[1, 1], [1, -1]], field,
                              label="bad")
    d = json.loads(serialize(coc))
    d["form"][0][0] = ["2"]                          # not normalized
    out.append(("broken_cocycle_norm",
                json.dumps(d, indent=2, sort_keys=True), "NotNormalized"))
    pr = build_pairing(cyclic_group(2), [[1, 1], [1, -1]], field,
                       label="bad")
    d = json.loads(serialize(pr))
    d["form"][1][1] = ["3"]                          # breaks comultiplicativity
    out.append(("broken_pairing", json.dumps(d, indent=2, sort_keys=True),
                "AxiomFails"))
    from .algebra import trivial_base
    NA = trivial_base(field)
    one = field.one
    act = [[{0: one}], [{0: one}]]
    bad_sigma = [[{0: one}, {0: one}], [{0: one}, {}]]  # sigma(g,g) = 0
    d = json.loads(serialize(encode_crossed(z2, NA, bad_sigma, act,
                                            label="bad")))
    out.append(("broken_sigma", json.dumps(d, indent=2, sort_keys=True),
                "NotConvolutionInvertible"))
    bad_act = [[{0: one}], [{0: field.of(2)}]]       # g|>1 = 2: not unital
    d = json.loads(serialize(encode_crossed(
        z2, NA, [[{0: one}, {0: one}], [{0: one}, {0: -one}]], bad_act,
        label="bad")))
    out.append(("broken_measuring", json.dumps(d, indent=2, sort_keys=True),
                "MeasuringFails"))
    d = json.loads(serialize(encode_crossed(
        z2, NA, [[{0: one}, {0: one}], [{0: one}, {0: -one}]], act,
        gauge=[{0: one}, {}], label="bad")))         # u(g) = 0
    out.append(("broken_gauge", json.dumps(d, indent=2, sort_keys=True),
                "NotConvolutionInvertible"))
    return out


def write_corpus(dirpath, field=QQ, include_broken=True):
    """Write the whole corpus (and broken fixtures) under a directory."""
    import os
    os.makedirs(dirpath, exist_ok=True)
    names = []
    for name, doc in corpus_documents(field):
        save(doc, os.path.join(dirpath, name + ".json"))
        names.append(name)
    if include_broken:
        for name, text, _cls in broken_documents(field):
            with open(os.path.join(dirpath, name + ".json"), "w",
                      encoding="utf-8") as fh:
                fh.write(text if text.endswith("\n") else text + "\n")
            names.append(name)
    return names
