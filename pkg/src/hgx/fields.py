"""Exact scalar arithmetic: arbitrary-precision rationals and prime fields.

Every computation in the library is carried out over one of these two
coefficient fields.  There is deliberately no floating point mode: all
identity checks downstream are exact equality checks, so tolerance is zero
by construction.

Scalars are plain values (``gmpy2.mpq`` for rationals, :class:`FpElt` for
prime fields) supporting ``+ - * /``, equality and hashing; the field object
supplies the constants and parsing/formatting.
"""

from __future__ import annotations

from gmpy2 import mpq


class FieldError(ValueError):
    pass


class FpElt:
    """An element of F_p.  Immutable, hashable, supports field arithmetic."""

    __slots__ = ("v", "p")

    def __init__(self, v, p):
        self.v = v % p
        self.p = p

    def __add__(self, other):
        return FpElt(self.v + other.v, self.p)

    def __sub__(self, other):
        return FpElt(self.v - other.v, self.p)

    def __neg__(self):
        return FpElt(-self.v, self.p)

    def __mul__(self, other):
        return FpElt(self.v * other.v, self.p)

    def __truediv__(self, other):
        if other.v % other.p == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return FpElt(self.v * pow(other.v, -1, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, FpElt):
            return self.p == other.p and self.v == other.v
        if other == 0:
            return self.v == 0
        return NotImplemented

    def __bool__(self):
        return self.v != 0

    def __hash__(self):
        return hash((self.v, self.p))

    def __repr__(self):
        return "%d" % self.v


class Field:
    """A coefficient field: either the rationals or F_p.

    mode: "rationals" or an integer prime p.
    """

    def __init__(self, mode="rationals"):
        if mode == "rationals":
            self.p = None
            self.zero = mpq(0)
            self.one = mpq(1)
        else:
            p = int(mode)
            if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
                raise FieldError("not a prime: %r" % (mode,))
            self.p = p
            self.zero = FpElt(0, p)
            self.one = FpElt(1, p)

    @property
    def mode(self):
        return "rationals" if self.p is None else self.p

    def of(self, n, d=1):
        """Build a scalar from integers n/d."""
        if self.p is None:
            return mpq(n, d)
        return FpElt(n, self.p) / FpElt(d, self.p)

    def parse(self, s):
        """Parse a scalar from a string like "3" or "-1/2"."""
        s = str(s).strip()
        if "/" in s:
            n, _, d = s.partition("/")
            n, d = int(n), int(d)
        else:
            n, d = int(s), 1
        if d == 0:
            raise FieldError("zero denominator in scalar %r" % s)
        return self.of(n, d)

    def fmt(self, x):
        """Canonical string form of a scalar (inverse of parse)."""
        if self.p is None:
            return str(x)
        return str(x.v)

    def __eq__(self, other):
        return isinstance(other, Field) and self.p == other.p

    def __hash__(self):
        return hash(self.p)

    def __repr__(self):
        return "Field(%r)" % (self.mode,)


QQ = Field("rationals")
