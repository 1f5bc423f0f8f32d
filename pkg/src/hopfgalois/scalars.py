"""Exact scalars: rationals and multivariate rational functions over Q.

Rationals are plain :class:`fractions.Fraction`.  Rational functions are
:class:`RatFunc` values, kept reduced by a multivariate gcd and with the
denominator made monic for the lexicographic order (first variable heaviest).
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd
from typing import Mapping, Sequence, Union

Monomial = tuple[int, ...]


class DivisionByZero(ZeroDivisionError):
    pass


class PoleAtPoint(ArithmeticError):
    pass


class ParseError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at byte offset {offset}")
        self.offset = offset


class UnknownSymbol(ValueError):
    def __init__(self, name: str, offset: int = 0):
        super().__init__(f"unknown symbol {name!r} at byte offset {offset}")
        self.name = name
        self.offset = offset


# ---------------------------------------------------------------------------
# Polynomials


class MultiPoly:
    """Sparse polynomial with rational coefficients in ``nvars`` variables."""

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Monomial, Fraction] | None = None):
        self.nvars = nvars
        self.terms: dict[Monomial, Fraction] = (
            {m: c for m, c in terms.items() if c} if terms else {}
        )
        self._hash: int | None = None

    @classmethod
    def _raw(cls, nvars: int, terms: dict[Monomial, Fraction]) -> MultiPoly:
        p = cls.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, nvars: int, c) -> MultiPoly:
        c = Fraction(c)
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def var(cls, nvars: int, i: int, power: int = 1) -> MultiPoly:
        mono = tuple(power if k == i else 0 for k in range(nvars))
        return cls._raw(nvars, {mono: Fraction(1)})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_const(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def is_one(self) -> bool:
        if len(self.terms) != 1:
            return False
        m, c = next(iter(self.terms.items()))
        return c == 1 and not any(m)

    def const_value(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def lead(self) -> Monomial:
        return max(self.terms)

    def lc(self) -> Fraction:
        return self.terms[max(self.terms)]

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.is_const() and self.const_value() == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __neg__(self) -> MultiPoly:
        return MultiPoly._raw(self.nvars, {m: -c for m, c in self.terms.items()})

    def __add__(self, other: MultiPoly) -> MultiPoly:
        if len(other.terms) > len(self.terms):
            self, other = other, self
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v += c
                if v:
                    out[m] = v
                else:
                    del out[m]
        return MultiPoly._raw(self.nvars, out)

    def __sub__(self, other: MultiPoly) -> MultiPoly:
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m)
            if v is None:
                out[m] = -c
            else:
                v -= c
                if v:
                    out[m] = v
                else:
                    del out[m]
        return MultiPoly._raw(self.nvars, out)

    def __mul__(self, other: MultiPoly) -> MultiPoly:
        if not self.terms or not other.terms:
            return MultiPoly._raw(self.nvars, {})
        out: dict[Monomial, Fraction] = {}
        get = out.get
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple([a + b for a, b in zip(m1, m2)])
                v = get(m)
                out[m] = c1 * c2 if v is None else v + c1 * c2
        return MultiPoly._raw(self.nvars, {m: c for m, c in out.items() if c})

    def scale(self, c: Fraction) -> MultiPoly:
        if not c:
            return MultiPoly._raw(self.nvars, {})
        return MultiPoly._raw(self.nvars, {m: v * c for m, v in self.terms.items()})

    def shift(self, mono: Monomial) -> MultiPoly:
        return MultiPoly._raw(
            self.nvars,
            {tuple([a + b for a, b in zip(m, mono)]): c for m, c in self.terms.items()},
        )

    def __pow__(self, n: int) -> MultiPoly:
        result = MultiPoly.const(self.nvars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def degree(self, i: int) -> int:
        return max((m[i] for m in self.terms), default=-1)

    def variables(self) -> set[int]:
        present: set[int] = set()
        for m in self.terms:
            present.update(k for k, e in enumerate(m) if e)
        return present

    def coeffs_in(self, i: int) -> dict[int, MultiPoly]:
        """View as a polynomial in variable ``i``; coefficients omit that variable."""
        groups: dict[int, dict[Monomial, Fraction]] = {}
        for m, c in self.terms.items():
            rest = m[:i] + (0,) + m[i + 1:]
            groups.setdefault(m[i], {})[rest] = c
        return {e: MultiPoly._raw(self.nvars, t) for e, t in groups.items()}

    def lc_in(self, i: int) -> MultiPoly:
        d = self.degree(i)
        return MultiPoly._raw(
            self.nvars,
            {m[:i] + (0,) + m[i + 1:]: c for m, c in self.terms.items() if m[i] == d},
        )

    def monic(self) -> MultiPoly:
        if not self.terms:
            return self
        lc = self.lc()
        return self if lc == 1 else self.scale(1 / lc)

    def divexact(self, other: MultiPoly) -> MultiPoly:
        """Quotient ``self / other``; raises ``ArithmeticError`` if inexact."""
        if not other.terms:
            raise DivisionByZero("polynomial division by zero")
        if other.is_const():
            return self.scale(1 / other.const_value())
        if len(other.terms) == 1:
            (lt, lc), = other.terms.items()
            out = {}
            for m, c in self.terms.items():
                e = tuple([a - b for a, b in zip(m, lt)])
                if min(e) < 0:
                    raise ArithmeticError("inexact polynomial division")
                out[e] = c / lc
            return MultiPoly._raw(self.nvars, out)
        lt = max(other.terms)
        lc = other.terms[lt]
        rem = dict(self.terms)
        quo: dict[Monomial, Fraction] = {}
        while rem:
            m = max(rem)
            e = tuple([a - b for a, b in zip(m, lt)])
            if min(e) < 0:
                raise ArithmeticError("inexact polynomial division")
            c = rem[m] / lc
            quo[e] = c
            for m2, c2 in other.terms.items():
                k = tuple([a + b for a, b in zip(m2, e)])
                v = rem.get(k, 0) - c * c2
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        return MultiPoly._raw(self.nvars, quo)

    def evaluate(self, values: Sequence[Fraction]) -> Fraction:
        total = Fraction(0)
        for m, c in self.terms.items():
            t = c
            for v, e in zip(values, m):
                if e:
                    t *= v**e
            total += t
        return total

    def format(self, names: Sequence[str]) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, reverse=True):
            c = self.terms[m]
            mono = "*".join(
                n if e == 1 else f"{n}^{e}" for n, e in zip(names, m) if e
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def __repr__(self) -> str:
        return f"MultiPoly({self.format([f'x{i}' for i in range(self.nvars)])})"


IntPoly = dict  # Monomial -> int, used inside the gcd


def _to_intpoly(p: MultiPoly) -> IntPoly:
    den = 1
    for c in p.terms.values():
        den = den * c.denominator // gcd(den, c.denominator)
    return _prim({m: int(c * den) for m, c in p.terms.items()})


def _prim(p: IntPoly) -> IntPoly:
    """Divide out the integer content and make the lex-leading coefficient positive."""
    g = 0
    for c in p.values():
        g = gcd(g, c)
        if g == 1:
            break
    if p[max(p)] < 0:
        g = -g
    if g == 1:
        return p
    return {m: c // g for m, c in p.items()}


def _imul(a: IntPoly, b: IntPoly) -> IntPoly:
    out: IntPoly = {}
    get = out.get
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = tuple([x + y for x, y in zip(m1, m2)])
            out[m] = get(m, 0) + c1 * c2
    return {m: c for m, c in out.items() if c}


def _idiv(a: IntPoly, b: IntPoly) -> IntPoly:
    """Exact quotient of Z-primitive-compatible polynomials."""
    if len(b) == 1:
        (lt, lc), = b.items()
        return {tuple([x - y for x, y in zip(m, lt)]): c // lc for m, c in a.items()}
    lt = max(b)
    lc = b[lt]
    rem = dict(a)
    quo: IntPoly = {}
    while rem:
        m = max(rem)
        e = tuple([x - y for x, y in zip(m, lt)])
        c, r = divmod(rem[m], lc)
        if r or min(e) < 0:
            raise ArithmeticError("inexact polynomial division")
        quo[e] = c
        for m2, c2 in b.items():
            k = tuple([x + y for x, y in zip(m2, e)])
            v = rem.get(k, 0) - c * c2
            if v:
                rem[k] = v
            else:
                rem.pop(k, None)
    return quo


def _ivars(p: IntPoly) -> set[int]:
    present: set[int] = set()
    for m in p:
        present.update(k for k, e in enumerate(m) if e)
    return present


def _ideg(p: IntPoly, v: int) -> int:
    return max(m[v] for m in p)


def _icoeffs(p: IntPoly, v: int) -> list[IntPoly]:
    groups: dict[int, IntPoly] = {}
    for m, c in p.items():
        groups.setdefault(m[v], {})[m[:v] + (0,) + m[v + 1:]] = c
    return sorted(groups.values(), key=len)


def _icontent(p: IntPoly, v: int, n: int) -> IntPoly:
    one = {(0,) * n: 1}
    g: IntPoly | None = None
    for c in _icoeffs(p, v):
        g = _prim(c) if g is None else _igcd(g, c, n)
        if len(g) == 1 and not any(next(iter(g))):
            return one
    return g if g is not None else one


def _igcd(f: IntPoly, g: IntPoly, n: int) -> IntPoly:
    one = {(0,) * n: 1}
    f, g = _prim(f), _prim(g)
    if len(f) == 1 or len(g) == 1:
        low = None
        for p in (f, g):
            for m in p:
                low = list(m) if low is None else [min(a, b) for a, b in zip(low, m)]
        return {tuple(low): 1}
    if f == g:
        return f
    vf, vg = _ivars(f), _ivars(g)
    if not vf & vg:
        return one
    v = min(vf | vg)
    if v not in vf:
        return _igcd(f, _icontent(g, v, n), n)
    if v not in vg:
        return _igcd(_icontent(f, v, n), g, n)
    cf, cg = _icontent(f, v, n), _icontent(g, v, n)
    c = _igcd(cf, cg, n)
    a, b = _idiv(f, cf), _idiv(g, cg)
    if _ideg(a, v) < _ideg(b, v):
        a, b = b, a
    while True:
        r = _iprem(a, b, v)
        if not r:
            h = _prim(_idiv(b, _icontent(b, v, n)))
            break
        if _ideg(r, v) == 0:
            h = one
            break
        a, b = b, _prim(_idiv(r, _icontent(r, v, n)))
    return _prim(_imul(c, h))


def _iprem(a: IntPoly, b: IntPoly, v: int) -> IntPoly:
    db = _ideg(b, v)
    lcb = {m[:v] + (0,) + m[v + 1:]: c for m, c in b.items() if m[v] == db}
    r = a
    while r:
        dr = _ideg(r, v)
        if dr < db:
            break
        t = {m[:v] + (dr - db,) + m[v + 1:]: c for m, c in r.items() if m[v] == dr}
        left = _imul(r, lcb)
        for m, c in _imul(t, b).items():
            x = left.get(m, 0) - c
            if x:
                left[m] = x
            else:
                left.pop(m, None)
        r = _prim(left) if left else left
    return r


def poly_gcd(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """Monic gcd by content/primitive-part recursion on the heaviest variable.

    The recursion runs on integer polynomials (Gauss's lemma keeps every
    division exact); the result is converted back and made monic.
    """
    n = f.nvars
    if not f.terms:
        return g.monic()
    if not g.terms:
        return f.monic()
    if f.is_const() or g.is_const():
        return MultiPoly.const(n, 1)
    if f == g:
        return f.monic()
    h = _igcd(_to_intpoly(f), _to_intpoly(g), n)
    return MultiPoly._raw(n, {m: Fraction(c) for m, c in h.items()}).monic()


# ---------------------------------------------------------------------------
# Rational functions


Scalar = Union[int, Fraction, "RatFunc"]


class RatFunc:
    """Reduced quotient of two :class:`MultiPoly` values over named variables."""

    __slots__ = ("vars", "num", "den", "_hash")

    def __init__(self, variables: Sequence[str], num: MultiPoly, den: MultiPoly | None = None):
        self.vars = tuple(variables)
        n = len(self.vars)
        if den is None:
            den = MultiPoly.const(n, 1)
        if not den.terms:
            raise DivisionByZero("zero denominator")
        if not num.terms:
            num, den = num, MultiPoly.const(n, 1)
        elif not den.is_one():
            g = poly_gcd(num, den)
            if not g.is_one():
                num, den = num.divexact(g), den.divexact(g)
            lc = den.lc()
            if lc != 1:
                num, den = num.scale(1 / lc), den.scale(1 / lc)
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def _raw(cls, variables: tuple[str, ...], num: MultiPoly, den: MultiPoly) -> RatFunc:
        r = cls.__new__(cls)
        r.vars = variables
        r.num = num
        r.den = den
        r._hash = None
        return r

    @classmethod
    def const(cls, variables: Sequence[str], c) -> RatFunc:
        variables = tuple(variables)
        n = len(variables)
        return cls._raw(variables, MultiPoly.const(n, c), MultiPoly.const(n, 1))

    @classmethod
    def var(cls, variables: Sequence[str], name: str) -> RatFunc:
        variables = tuple(variables)
        n = len(variables)
        return cls._raw(variables, MultiPoly.var(n, variables.index(name)), MultiPoly.const(n, 1))

    def _coerce(self, other) -> RatFunc | None:
        if isinstance(other, RatFunc):
            if other.vars != self.vars:
                raise ValueError(f"variable mismatch: {self.vars} vs {other.vars}")
            return other
        if isinstance(other, (int, Fraction)):
            return RatFunc.const(self.vars, other)
        return None

    # predicates -----------------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.num.terms)

    def is_const(self) -> bool:
        return self.den.is_one() and self.num.is_const()

    def weight(self) -> int:
        """Rough size, used to prefer simple pivots."""
        return len(self.num.terms) + len(self.den.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, RatFunc):
            return self.vars == other.vars and self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return self.is_const() and self.num.const_value() == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.is_const():
            return hash(self.num.const_value())
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    # arithmetic -----------------------------------------------------------
    def __neg__(self) -> RatFunc:
        return RatFunc._raw(self.vars, -self.num, self.den)

    def __pos__(self) -> RatFunc:
        return self

    def __add__(self, other) -> RatFunc:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o.num.terms:
            return self
        if not self.num.terms:
            return o
        a, b, c, d = self.num, self.den, o.num, o.den
        if b.is_one() and d.is_one():
            return RatFunc._raw(self.vars, a + c, b)
        if d.is_one():
            return RatFunc._raw(self.vars, a + c * b, b)
        if b.is_one():
            return RatFunc._raw(self.vars, a * d + c, d)
        if b == d:
            return RatFunc(self.vars, a + c, b)
        g = poly_gcd(b, d)
        if g.is_one():
            return RatFunc._raw(self.vars, a * d + c * b, b * d)
        b1, d1 = b.divexact(g), d.divexact(g)
        t = a * d1 + c * b1
        if not t.terms:
            return RatFunc.const(self.vars, 0)
        g2 = poly_gcd(t, g)
        if not g2.is_one():
            t = t.divexact(g2)
            d = d.divexact(g2)
        den = b1 * d
        lc = den.lc()
        if lc != 1:
            t, den = t.scale(1 / lc), den.scale(1 / lc)
        return RatFunc._raw(self.vars, t, den)

    __radd__ = __add__

    def __sub__(self, other) -> RatFunc:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> RatFunc:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other) -> RatFunc:
        if isinstance(other, (int, Fraction)):
            if not other:
                return RatFunc.const(self.vars, 0)
            return RatFunc._raw(self.vars, self.num.scale(Fraction(other)), self.den)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b, c, d = self.num, self.den, o.num, o.den
        if not a.terms or not c.terms:
            return RatFunc.const(self.vars, 0)
        if b.is_one() and d.is_one():
            return RatFunc._raw(self.vars, a * c, b)
        if not d.is_one():
            g1 = poly_gcd(a, d)
            if not g1.is_one():
                a, d = a.divexact(g1), d.divexact(g1)
        if not b.is_one():
            g2 = poly_gcd(c, b)
            if not g2.is_one():
                c, b = c.divexact(g2), b.divexact(g2)
        num, den = a * c, b * d
        lc = den.lc()
        if lc != 1:
            num, den = num.scale(1 / lc), den.scale(1 / lc)
        return RatFunc._raw(self.vars, num, den)

    __rmul__ = __mul__

    def inverse(self) -> RatFunc:
        if not self.num.terms:
            raise DivisionByZero("division by zero rational function")
        num, den = self.den, self.num
        lc = den.lc()
        if lc != 1:
            num, den = num.scale(1 / lc), den.scale(1 / lc)
        return RatFunc._raw(self.vars, num, den)

    def __truediv__(self, other) -> RatFunc:
        if isinstance(other, (int, Fraction)):
            if not other:
                raise DivisionByZero("division by zero")
            return RatFunc._raw(self.vars, self.num.scale(1 / Fraction(other)), self.den)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other) -> RatFunc:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int) -> RatFunc:
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc._raw(self.vars, self.num**n, self.den**n)

    # evaluation and printing ---------------------------------------------
    def specialize(self, assignment: Mapping[str, Fraction]) -> Fraction:
        return specialize(self, assignment)

    def __str__(self) -> str:
        num = self.num.format(self.vars)
        if self.den.is_one():
            return num
        if len(self.num.terms) > 1:
            num = f"({num})"
        den = self.den.format(self.vars)
        (m, _), = self.den.terms.items() if len(self.den.terms) == 1 else ((None, None),)
        if m is None or sum(1 for e in m if e) > 1:
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self) -> str:
        return f"RatFunc({self})"


def specialize(f: Scalar, assignment: Mapping[str, Fraction]) -> Fraction:
    """Evaluate ``f`` at rational values for all of its variables."""
    if not isinstance(f, RatFunc):
        return Fraction(f)
    missing = [v for v in f.vars if v not in assignment]
    if missing:
        raise ValueError(f"assignment misses {missing}")
    values = [Fraction(assignment[v]) for v in f.vars]
    den = f.den.evaluate(values)
    if not den:
        raise PoleAtPoint(f"denominator of {f} vanishes at {dict(assignment)}")
    return f.num.evaluate(values) / den


# ---------------------------------------------------------------------------
# Fields


class Field:
    """Coefficient field: ``Q`` (no variables) or ``Q(vars...)``."""

    def __init__(self, variables: Sequence[str] = ()):
        self.vars = tuple(variables)
        if len(set(self.vars)) != len(self.vars):
            raise ValueError("duplicate variable names")

    @property
    def is_rational(self) -> bool:
        return not self.vars

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and other.vars == self.vars

    def __hash__(self) -> int:
        return hash(self.vars)

    def __repr__(self) -> str:
        return "Q" if not self.vars else f"Q({', '.join(self.vars)})"

    def zero(self) -> Scalar:
        return self(0)

    def one(self) -> Scalar:
        return self(1)

    def __call__(self, value) -> Scalar:
        if isinstance(value, str):
            return self.parse(value)
        if not self.vars:
            if isinstance(value, RatFunc):
                if not value.is_const():
                    raise ValueError(f"{value} is not rational")
                return value.num.const_value()
            return Fraction(value)
        if isinstance(value, RatFunc):
            return value
        return RatFunc.const(self.vars, value)

    def var(self, name: str) -> RatFunc:
        return RatFunc.var(self.vars, name)

    def parse(self, text: str) -> Scalar:
        value = parse_coeff(text, self.vars)
        return self(value)


QQ = Field()


# ---------------------------------------------------------------------------
# Parser


_TOKEN = re.compile(r"(\d+)|([A-Za-z_][A-Za-z_0-9]*)|([-+*/^()])")


class _Parser:
    def __init__(self, text: str, variables: Sequence[str]):
        self.text = text
        self.vars = tuple(variables)
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            if text[pos].isspace():
                pos += 1
                continue
            m = _TOKEN.match(text, pos)
            if m is None:
                raise ParseError(f"unexpected character {text[pos]!r}", self._byte(pos))
            kind = ("int", "name", "op")[m.lastindex - 1]
            self.tokens.append((kind, m.group(0), pos))
            pos = m.end()
        self.i = 0

    def _byte(self, index: int) -> int:
        return len(self.text[:index].encode("utf-8"))

    def peek(self) -> tuple[str, str, int] | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self) -> tuple[str, str, int]:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", self._byte(len(self.text)))
        self.i += 1
        return tok

    def const(self, c) -> RatFunc:
        return RatFunc.const(self.vars, c)

    def parse(self) -> RatFunc:
        if not self.tokens:
            raise ParseError("empty expression", 0)
        value = self.expr()
        tok = self.peek()
        if tok is not None:
            raise ParseError(f"unexpected {tok[1]!r}", self._byte(tok[2]))
        return value

    def expr(self) -> RatFunc:
        value = self.term()
        while (tok := self.peek()) is not None and tok[0] == "op" and tok[1] in "+-":
            self.take()
            rhs = self.term()
            value = value + rhs if tok[1] == "+" else value - rhs
        return value

    def term(self) -> RatFunc:
        value = self.unary()
        while (tok := self.peek()) is not None and tok[0] == "op" and tok[1] in "*/":
            self.take()
            rhs = self.unary()
            if tok[1] == "*":
                value = value * rhs
            else:
                if not rhs:
                    raise DivisionByZero(f"division by zero at byte offset {self._byte(tok[2])}")
                value = value / rhs
        return value

    def unary(self) -> RatFunc:
        tok = self.peek()
        if tok is not None and tok[0] == "op" and tok[1] in "+-":
            self.take()
            value = self.unary()
            return -value if tok[1] == "-" else value
        return self.power()

    def power(self) -> RatFunc:
        base = self.atom()
        tok = self.peek()
        if tok is not None and tok[0] == "op" and tok[1] == "^":
            self.take()
            exp = self.take()
            if exp[0] != "int":
                raise ParseError("exponent must be a nonnegative integer", self._byte(exp[2]))
            base = base ** int(exp[1])
            nxt = self.peek()
            if nxt is not None and nxt[0] == "op" and nxt[1] == "^":
                raise ParseError("chained exponent", self._byte(nxt[2]))
        return base

    def atom(self) -> RatFunc:
        tok = self.take()
        kind, text, start = tok
        if kind == "int":
            return self.const(int(text))
        if kind == "name":
            if text not in self.vars:
                raise UnknownSymbol(text, self._byte(start))
            return RatFunc.var(self.vars, text)
        if text == "(":
            value = self.expr()
            close = self.take()
            if close[1] == ")":
                return value
            raise ParseError("expected ')'", self._byte(close[2]))
        raise ParseError(f"unexpected {text!r}", self._byte(start))


def parse_coeff(text: str, variables: Sequence[str] = ()) -> RatFunc:
    """Parse a coefficient expression into a :class:`RatFunc` over ``variables``."""
    return _Parser(text, variables).parse()


def format_scalar(x: Scalar) -> str:
    return str(x)
