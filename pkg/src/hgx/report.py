"""Verification reports: deterministic, machine-readable pass/fail lists."""

from __future__ import annotations


class CheckItem:
    __slots__ = ("ident", "label", "ok", "witness")

    def __init__(self, ident, label, ok, witness=None):
        self.ident = ident
        self.label = label
        self.ok = bool(ok)
        self.witness = witness

    def line(self, suite):
        s = "CHECK %s %s %s %s" % (suite, self.ident, self.label,
                                   "PASS" if self.ok else "FAIL")
        if not self.ok and self.witness is not None:
            s += " witness=%s" % (self.witness,)
        return s


class Report:
    def __init__(self, suite, items=None):
        self.suite = suite
        self.items = list(items or [])

    def add(self, ident, label, ok, witness=None):
        self.items.append(CheckItem(ident, label, ok, witness))

    def extend(self, other):
        self.items.extend(other.items)

    @property
    def ok(self):
        return all(it.ok for it in self.items)

    def failures(self):
        return [it for it in self.items if not it.ok]

    def lines(self):
        return [it.line(self.suite) for it in self.items]

    def text(self):
        out = ["suite %s: %s" % (self.suite, "PASS" if self.ok else "FAIL")]
        for it in self.items:
            mark = "ok  " if it.ok else "FAIL"
            s = "  [%s] %s  %s" % (mark, it.ident, it.label)
            if not it.ok and it.witness is not None:
                s += "  witness=%s" % (it.witness,)
            out.append(s)
        return "\n".join(out)

    def __repr__(self):
        return "Report(%s, %d checks, %s)" % (
            self.suite, len(self.items), "PASS" if self.ok else "FAIL")
