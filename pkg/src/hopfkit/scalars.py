"""Exact scalars: the rational function field Q(t_1, ..., t_m) and its signed
Laurent monomials.

Polynomials are python-flint ``fmpq_mpoly`` objects in degree-lexicographic
order.  A :class:`Scalar` is stored as ``num/den`` with ``gcd(num, den) = 1``
and ``den`` monic, which makes the representation unique, so equality and
hashing are structural.

Literal grammar (used by datum files and the CLI)::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := ("+" | "-") unary | power
    power  := atom (("^" | "**") ["+" | "-"] INT)?
    atom   := INT | DECIMAL | NAME | "(" expr ")"

``str(x)`` always produces text that parses back to ``x``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache

import flint

from .errors import AmbiguousLog, DivisionByZero, NotUnit, ParseError

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z_0-9]*\Z")


class ParameterSpace:
    """An ordered tuple of transcendental parameters."""

    __slots__ = ("names", "ctx", "_zero", "_one", "_gens")

    def __new__(cls, names=()):
        return _space(tuple(names))

    @classmethod
    def _create(cls, names):
        for n in names:
            if not _NAME_RE.match(n):
                raise ParseError(f"bad parameter name {n!r}")
        if len(set(names)) != len(names):
            raise ParseError(f"duplicate parameter names in {names}")
        self = object.__new__(cls)
        self.names = names
        self.ctx = flint.fmpq_mpoly_ctx.get(names, "deglex")
        one = self.ctx.from_dict({(0,) * len(names): 1})
        self._zero = Scalar._raw(self, self.ctx.from_dict({}), one)
        self._one = Scalar._raw(self, one, one)
        self._gens = tuple(Scalar._raw(self, g, one) for g in self.ctx.gens())
        return self

    @property
    def m(self):
        return len(self.names)

    def __reduce__(self):
        return (ParameterSpace, (self.names,))

    def __repr__(self):
        return f"ParameterSpace({list(self.names)})"

    def zero(self):
        return self._zero

    def one(self):
        return self._one

    def param(self, name):
        return self._gens[self.names.index(name)]

    def scalar(self, value) -> Scalar:
        """Coerce an int, Fraction, string, Scalar or UnitScalar."""
        if isinstance(value, Scalar):
            if value.space is not self:
                raise ValueError("scalar from a different parameter space")
            return value
        if isinstance(value, UnitScalar):
            return value.to_scalar()
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, (int, Fraction)):
            return self._const(value)
        raise TypeError(f"cannot coerce {type(value).__name__} to Scalar")

    def _const(self, c):
        if c == 0:
            return self._zero
        if c == 1:
            return self._one
        c = Fraction(c)
        return Scalar._raw(self, self._one.num * flint.fmpq(c.numerator, c.denominator), self._one.num)

    def unit(self, sign=1, exponents=None) -> UnitScalar:
        if exponents is None:
            exponents = (0,) * self.m
        return UnitScalar(self, sign, exponents)

    def unit_one(self):
        return UnitScalar(self, 1, (0,) * self.m)

    def parse(self, text) -> Scalar:
        return _Parser(self, text).parse()

    def parse_unit(self, text) -> UnitScalar:
        s = self.parse(text)
        u = s.as_unit()
        if u is None:
            raise NotUnit(f"{text!r} is not a signed Laurent monomial in {list(self.names)}")
        return u


@lru_cache(maxsize=None)
def _space(names):
    return ParameterSpace._create(names)


def _coerce(space, other):
    if isinstance(other, Scalar):
        if other.space is not space:
            raise ValueError("scalars from different parameter spaces")
        return other
    if isinstance(other, UnitScalar):
        if other.space is not space:
            raise ValueError("scalars from different parameter spaces")
        return other.to_scalar()
    if isinstance(other, (int, Fraction)):
        return space._const(other)
    return NotImplemented


class Scalar:
    """Element of Q(t_1..t_m) in canonical ``num/den`` form."""

    __slots__ = ("space", "num", "den", "_hash")

    @classmethod
    def _raw(cls, space, num, den):
        self = object.__new__(cls)
        self.space = space
        self.num = num
        self.den = den
        self._hash = None
        return self

    @classmethod
    def _make(cls, space, num, den):
        if den.is_zero():
            raise DivisionByZero("division by zero")
        if num.is_zero():
            return space._zero
        if not den.is_one():
            g = num.gcd(den)
            if not g.is_one():
                num = num / g
                den = den / g
            lc = den.leading_coefficient()
            if lc != 1:
                num = num / lc
                den = den / lc
        return cls._raw(space, num, den)

    def __reduce__(self):
        return (_unpickle_scalar, (self.space.names, str(self)))

    # arithmetic
    def __add__(self, other):
        o = _coerce(self.space, other)
        if o is NotImplemented:
            return o
        if self.den.is_one() and o.den.is_one():
            n = self.num + o.num
            return Scalar._raw(self.space, n, self.den) if not n.is_zero() else self.space._zero
        if self.den == o.den:
            return Scalar._make(self.space, self.num + o.num, self.den)
        if o.den.is_one():
            return Scalar._raw(self.space, self.num + o.num * self.den, self.den)
        if self.den.is_one():
            return Scalar._raw(self.space, self.num * o.den + o.num, o.den)
        return Scalar._make(self.space, self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        if self.num.is_zero():
            return self
        return Scalar._raw(self.space, -self.num, self.den)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = _coerce(self.space, other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = _coerce(self.space, other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = _coerce(self.space, other)
        if o is NotImplemented:
            return o
        if self.num.is_zero() or o.num.is_zero():
            return self.space._zero
        if self.den.is_one() and o.den.is_one():
            return Scalar._raw(self.space, self.num * o.num, self.den)
        # cross-cancel; gcds are monic so the new denominator stays monic
        n1, d2 = self.num, o.den
        if not d2.is_one():
            g = n1.gcd(d2)
            if not g.is_one():
                n1, d2 = n1 / g, d2 / g
        n2, d1 = o.num, self.den
        if not d1.is_one():
            g = n2.gcd(d1)
            if not g.is_one():
                n2, d1 = n2 / g, d1 / g
        return Scalar._raw(self.space, n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def inverse(self):
        if self.num.is_zero():
            raise DivisionByZero("division by zero")
        num, den = self.den, self.num
        lc = den.leading_coefficient()
        if lc != 1:
            num, den = num / lc, den / lc
        return Scalar._raw(self.space, num, den)

    def __truediv__(self, other):
        o = _coerce(self.space, other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = _coerce(self.space, other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        if k == 0:
            return self.space._one
        return Scalar._raw(self.space, self.num ** k, self.den ** k)

    # comparison
    def __eq__(self, other):
        o = _coerce(self.space, other)
        if o is NotImplemented:
            return o
        return self.num == o.num and self.den == o.den

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        if self._hash is None:
            if self.den.is_one() and self.num.is_constant():
                c = self.constant_value()
                self._hash = hash(c.numerator if c.denominator == 1 else c)
            else:
                self._hash = hash((_terms_key(self.num), _terms_key(self.den)))
        return self._hash

    def __bool__(self):
        return not self.num.is_zero()

    def is_zero(self):
        return self.num.is_zero()

    def is_one(self):
        return self.num.is_one() and self.den.is_one()

    def is_constant(self):
        return self.den.is_one() and self.num.is_constant()

    def constant_value(self):
        """The rational value of a constant scalar."""
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        if self.num.is_zero():
            return Fraction(0)
        c = self.num.leading_coefficient()
        return Fraction(int(c.p), int(c.q))

    def as_unit(self):
        """Return the equal UnitScalar, or None if this is not ±monomial."""
        nt = list(self.num.terms())
        dt = list(self.den.terms())
        if len(nt) != 1 or len(dt) != 1:
            return None
        (ne, nc), (de, _) = nt[0], dt[0]
        if nc == 1:
            sign = 1
        elif nc == -1:
            sign = -1
        else:
            return None
        return UnitScalar(self.space, sign, tuple(a - b for a, b in zip(ne, de)))

    def __str__(self):
        n = str(self.num)
        if self.den.is_one():
            return n
        d = str(self.den)
        if len(self.num) > 1:
            n = f"({n})"
        if len(self.den) > 1 or "*" in d or "/" in d:
            d = f"({d})"
        return f"{n}/{d}"

    def __repr__(self):
        return f"Scalar({str(self)!r})"


def _terms_key(p):
    return tuple((e, int(c.p), int(c.q)) for e, c in p.terms())


def _unpickle_scalar(names, text):
    return ParameterSpace(names).parse(text)


class UnitScalar:
    """A signed Laurent monomial ``sign * prod t_j^e_j``."""

    __slots__ = ("space", "sign", "exponents", "_scalar")

    def __init__(self, space, sign, exponents):
        if sign not in (1, -1):
            raise NotUnit(f"sign must be +1 or -1, got {sign}")
        exponents = tuple(int(e) for e in exponents)
        if len(exponents) != space.m:
            raise ValueError(f"expected {space.m} exponents, got {len(exponents)}")
        self.space = space
        self.sign = sign
        self.exponents = exponents
        self._scalar = None

    def __reduce__(self):
        return (UnitScalar, (self.space, self.sign, self.exponents))

    def __mul__(self, other):
        if isinstance(other, UnitScalar):
            return UnitScalar(self.space, self.sign * other.sign,
                              tuple(a + b for a, b in zip(self.exponents, other.exponents)))
        return self.to_scalar() * other

    def __rmul__(self, other):
        return other * self.to_scalar()

    def __truediv__(self, other):
        if isinstance(other, UnitScalar):
            return self * other.inverse()
        return self.to_scalar() / other

    def __rtruediv__(self, other):
        return other / self.to_scalar()

    def __add__(self, other):
        return self.to_scalar() + other

    __radd__ = __add__

    def __sub__(self, other):
        return self.to_scalar() - other

    def __rsub__(self, other):
        return other - self.to_scalar()

    def __neg__(self):
        return UnitScalar(self.space, -self.sign, self.exponents)

    def inverse(self):
        return UnitScalar(self.space, self.sign, tuple(-e for e in self.exponents))

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        return UnitScalar(self.space, self.sign if k % 2 else 1, tuple(k * e for e in self.exponents))

    def __eq__(self, other):
        if isinstance(other, UnitScalar):
            return self.sign == other.sign and self.exponents == other.exponents and self.space is other.space
        if isinstance(other, (Scalar, int, Fraction)):
            return self.to_scalar() == other
        return NotImplemented

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        return hash(self.to_scalar())

    def is_one(self):
        return self.sign == 1 and not any(self.exponents)

    def to_scalar(self) -> Scalar:
        if self._scalar is None:
            sp = self.space
            pos = tuple(max(e, 0) for e in self.exponents)
            neg = tuple(max(-e, 0) for e in self.exponents)
            num = sp.ctx.from_dict({pos: self.sign})
            den = sp.ctx.from_dict({neg: 1})
            self._scalar = Scalar._raw(sp, num, den)
        return self._scalar

    def __str__(self):
        parts = []
        for name, e in zip(self.space.names, self.exponents):
            if e == 1:
                parts.append(name)
            elif e:
                parts.append(f"{name}^{e}")
        body = "*".join(parts) if parts else "1"
        return ("-" if self.sign < 0 else "") + body

    def __repr__(self):
        return f"UnitScalar({str(self)!r})"


def is_root_of_unity(u: UnitScalar) -> bool:
    """True iff ``u`` is 1 or -1, the only roots of unity in Q(t)."""
    return not any(u.exponents)


def unit_discrete_log(base: UnitScalar, value: UnitScalar):
    """Return k with ``base**k == value``, or None if there is none.

    Raises AmbiguousLog when ``base`` is ±1 and infinitely many k work.
    """
    if base.space is not value.space:
        raise ValueError("units from different parameter spaces")
    if is_root_of_unity(base):
        if any(value.exponents):
            return None
        if base.sign == 1 and value.sign == -1:
            return None
        raise AmbiguousLog(f"log of {value} to base {base} is not unique")
    k = None
    for b, v in zip(base.exponents, value.exponents):
        if b == 0:
            if v != 0:
                return None
            continue
        if v % b:
            return None
        kk = v // b
        if k is None:
            k = kk
        elif k != kk:
            return None
    if (base.sign if k % 2 else 1) != value.sign:
        return None
    return k


class _Parser:
    _TOKEN = re.compile(r"\s*(?:(\d+(?:\.\d+)?)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")

    def __init__(self, space, text):
        self.space = space
        self.text = text
        self.toks = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = self._TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise ParseError(f"unexpected character at {pos} in {self.text!r}")
            num, name, op = m.groups()
            if num is not None:
                self.toks.append(("num", num))
            elif name is not None:
                if name not in space.names:
                    raise ParseError(f"unknown parameter {name!r} in {self.text!r}")
                self.toks.append(("name", name))
            else:
                self.toks.append(("op", "^" if op == "**" else op))
            pos = m.end()
            while pos < len(text) and text[pos].isspace():
                pos += 1
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        t = self.peek()
        if t[0] is None:
            raise ParseError(f"unexpected end of input in {self.text!r}")
        self.i += 1
        return t

    def parse(self):
        if not self.toks:
            raise ParseError("empty scalar literal")
        v = self.expr()
        if self.i != len(self.toks):
            raise ParseError(f"trailing input {self.toks[self.i][1]!r} in {self.text!r}")
        return v

    def expr(self):
        v = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            w = self.term()
            v = v + w if op == "+" else v - w
        return v

    def term(self):
        v = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            w = self.unary()
            v = v * w if op == "*" else v / w
        return v

    def unary(self):
        t = self.peek()
        if t == ("op", "-"):
            self.take()
            return -self.unary()
        if t == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            sign = 1
            while self.peek() in (("op", "-"), ("op", "+")):
                if self.take()[1] == "-":
                    sign = -sign
            kind, tok = self.take()
            if kind != "num" or "." in tok:
                raise ParseError(f"exponent must be an integer in {self.text!r}")
            return base ** (sign * int(tok))
        return base

    def atom(self):
        kind, tok = self.take()
        if kind == "num":
            return self.space._const(Fraction(tok))
        if kind == "name":
            return self.space.param(tok)
        if tok == "(":
            v = self.expr()
            if self.take() != ("op", ")"):
                raise ParseError(f"expected ')' in {self.text!r}")
            return v
        raise ParseError(f"unexpected {tok!r} in {self.text!r}")
