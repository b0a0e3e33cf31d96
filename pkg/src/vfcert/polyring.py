"""Exact rationals, sparse multivariate polynomials and rational functions.

Coefficients are ``gmpy2.mpq`` values.  A :class:`Poly` is a map from exponent
tuples to nonzero coefficients over a fixed, ordered list of variable names
(its *ambient*).  Values are immutable by convention: no method mutates
``self``.

The text grammar::

    expr     := term (('+' | '-') term)*
    term     := factor (('*' | '/') factor)*      # nonconstant divisor: rational mode only
    factor   := '-' factor | base ('^' natural)?
    base     := rational | variable | '(' expr ')'
    rational := integer ('/' positive-integer)?
    variable := [A-Za-z][A-Za-z0-9_']*
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Sequence, Tuple, Union

from gmpy2 import mpq

Rational = type(mpq())
Monomial = Tuple[int, ...]
Number = Union[int, Fraction, "mpq"]

NEG_INF = float("-inf")

_VAR_RE = re.compile(r"[A-Za-z][A-Za-z0-9_']*\Z")


def as_rational(x) -> Rational:
    """Coerce ints, Fractions, mpq and strings like ``"-3/2"`` to mpq."""
    if isinstance(x, Rational):
        return x
    if isinstance(x, (int, Fraction)) or type(x).__name__ == "mpz":
        return mpq(x)
    if isinstance(x, str):
        return mpq(x.strip())
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def format_rational(c) -> str:
    c = as_rational(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


# -- monomial orders --------------------------------------------------------

def grlex_key(m: Monomial):
    return (sum(m), m)


def lex_key(m: Monomial):
    return m


def grevlex_key(m: Monomial):
    return (sum(m), tuple(-e for e in reversed(m)))


def _check_ambient(ambient: Sequence[str]) -> Tuple[str, ...]:
    ambient = tuple(ambient)
    for name in ambient:
        if not _VAR_RE.match(name):
            raise ValueError(f"invalid variable name {name!r}")
    if len(set(ambient)) != len(ambient):
        raise ValueError(f"duplicate variable names in {ambient}")
    return ambient


class Poly:
    """Sparse polynomial with exact rational coefficients."""

    __slots__ = ("ambient", "terms", "_hash")

    def __init__(self, ambient: Sequence[str], terms: Mapping[Monomial, Number] | None = None):
        self.ambient = _check_ambient(ambient)
        n = len(self.ambient)
        clean: Dict[Monomial, Rational] = {}
        for m, c in (terms or {}).items():
            m = tuple(int(e) for e in m)
            if len(m) != n or any(e < 0 for e in m):
                raise ValueError(f"bad exponent vector {m} for ambient {self.ambient}")
            c = as_rational(c)
            if c:
                clean[m] = clean.get(m, mpq(0)) + c
                if not clean[m]:
                    del clean[m]
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, ambient: Tuple[str, ...], terms: Dict[Monomial, Rational]) -> "Poly":
        # trusted constructor: ambient already validated, no zero coefficients
        p = object.__new__(cls)
        p.ambient = ambient
        p.terms = terms
        p._hash = None
        return p

    # -- constructors --------------------------------------------------------
    @classmethod
    def zero(cls, ambient: Sequence[str]) -> "Poly":
        return cls(ambient)

    @classmethod
    def constant(cls, ambient: Sequence[str], c: Number) -> "Poly":
        ambient = _check_ambient(ambient)
        c = as_rational(c)
        return cls._raw(ambient, {(0,) * len(ambient): c} if c else {})

    @classmethod
    def var(cls, ambient: Sequence[str], name: str) -> "Poly":
        ambient = _check_ambient(ambient)
        if name not in ambient:
            raise KeyError(f"unknown variable {name!r}")
        i = ambient.index(name)
        m = tuple(1 if j == i else 0 for j in range(len(ambient)))
        return cls._raw(ambient, {m: mpq(1)})

    @classmethod
    def gens(cls, ambient: Sequence[str]):
        return tuple(cls.var(ambient, v) for v in ambient)

    # -- basic predicates ----------------------------------------------------
    @property
    def nvars(self) -> int:
        return len(self.ambient)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_term(self) -> Rational:
        return self.terms.get((0,) * self.nvars, mpq(0))

    def coeff(self, m: Monomial) -> Rational:
        return self.terms.get(tuple(m), mpq(0))

    def degree(self):
        """Total degree; ``NEG_INF`` for the zero polynomial."""
        if not self.terms:
            return NEG_INF
        return max(sum(m) for m in self.terms)

    def degree_in(self, var: str):
        i = self._index(var)
        if not self.terms:
            return NEG_INF
        return max(m[i] for m in self.terms)

    def is_homogeneous(self, block: Iterable[int] | None = None) -> bool:
        """Homogeneity in all variables, or only in the given index block."""
        idx = list(range(self.nvars)) if block is None else list(block)
        degs = {sum(m[i] for i in idx) for m in self.terms}
        return len(degs) <= 1

    def support_vars(self) -> Tuple[str, ...]:
        used = [False] * self.nvars
        for m in self.terms:
            for i, e in enumerate(m):
                if e:
                    used[i] = True
        return tuple(v for v, u in zip(self.ambient, used) if u)

    def _index(self, var: str) -> int:
        try:
            return self.ambient.index(var)
        except ValueError:
            raise KeyError(f"unknown variable {var!r}; ambient is {self.ambient}") from None

    def leading_monomial(self, key=grlex_key) -> Monomial:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=key)

    def leading_coefficient(self, key=grlex_key) -> Rational:
        return self.terms[self.leading_monomial(key)]

    def monic(self, key=grlex_key) -> "Poly":
        if not self.terms:
            return self
        return self * (1 / self.leading_coefficient(key))

    # -- arithmetic ----------------------------------------------------------
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ambient != self.ambient:
                raise ValueError(f"ambient mismatch: {self.ambient} vs {other.ambient}")
            return other
        if isinstance(other, RatFunc):
            return NotImplemented
        try:
            return Poly.constant(self.ambient, other)
        except TypeError:
            return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            if s is None:
                out[m] = c
            else:
                s = s + c
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Poly._raw(self.ambient, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.ambient, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, Poly):
            if other.ambient != self.ambient:
                raise ValueError(f"ambient mismatch: {self.ambient} vs {other.ambient}")
            if len(other.terms) > len(self.terms):
                a, b = other.terms, self.terms
            else:
                a, b = self.terms, other.terms
            out: Dict[Monomial, Rational] = {}
            for m2, c2 in b.items():
                for m1, c1 in a.items():
                    m = tuple(x + y for x, y in zip(m1, m2))
                    s = out.get(m)
                    out[m] = c1 * c2 if s is None else s + c1 * c2
            return Poly._raw(self.ambient, {m: c for m, c in out.items() if c})
        if isinstance(other, RatFunc):
            return NotImplemented
        try:
            c = as_rational(other)
        except TypeError:
            return NotImplemented
        if not c:
            return Poly._raw(self.ambient, {})
        return Poly._raw(self.ambient, {m: v * c for m, v in self.terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (Poly, RatFunc)):
            return RatFunc(self) / other
        c = as_rational(other)
        if not c:
            raise ZeroDivisionError("division by zero")
        return self * (1 / c)

    def __rtruediv__(self, other):
        return RatFunc(Poly.constant(self.ambient, other)) / self

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Poly.constant(self.ambient, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ambient == other.ambient and self.terms == other.terms
        if isinstance(other, RatFunc):
            return other == self
        try:
            c = as_rational(other)
        except TypeError:
            return NotImplemented
        return self.terms == ({(0,) * self.nvars: c} if c else {})

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ambient, frozenset(self.terms.items())))
        return self._hash

    # -- calculus and evaluation ---------------------------------------------
    def diff(self, var: str) -> "Poly":
        i = self._index(var)
        out = {}
        for m, c in self.terms.items():
            e = m[i]
            if e:
                out[m[:i] + (e - 1,) + m[i + 1:]] = c * e
        return Poly._raw(self.ambient, out)

    def evaluate(self, point: Sequence[Number]) -> Rational:
        if len(point) != self.nvars:
            raise ValueError(f"point has {len(point)} coordinates, ambient has {self.nvars}")
        pt = [as_rational(x) for x in point]
        total = mpq(0)
        for m, c in self.terms.items():
            t = c
            for x, e in zip(pt, m):
                if e:
                    t = t * x ** e
            total += t
        return total

    def subs(self, values: Mapping[str, object]) -> "Poly":
        """Substitute rationals or same-ambient polynomials for variables."""
        idx = {self._index(v): val for v, val in values.items()}
        result = Poly._raw(self.ambient, {})
        powers: Dict[Tuple[int, int], Poly] = {}
        for m, c in self.terms.items():
            kept = tuple(0 if i in idx else e for i, e in enumerate(m))
            term = Poly._raw(self.ambient, {kept: c})
            for i, val in idx.items():
                e = m[i]
                if not e:
                    continue
                if isinstance(val, Poly):
                    key = (i, e)
                    if key not in powers:
                        powers[key] = val ** e
                    term = term * powers[key]
                else:
                    term = term * (as_rational(val) ** e)
            result = result + term
        return result

    def embed(self, ambient: Sequence[str]) -> "Poly":
        """Re-express in a larger (or reordered) ambient containing all used variables."""
        ambient = _check_ambient(ambient)
        if ambient == self.ambient:
            return self
        pos = {v: i for i, v in enumerate(ambient)}
        n = len(ambient)
        out = {}
        for m, c in self.terms.items():
            new = [0] * n
            for v, e in zip(self.ambient, m):
                if e:
                    if v not in pos:
                        raise ValueError(f"variable {v!r} missing from target ambient")
                    new[pos[v]] = e
            out[tuple(new)] = c
        return Poly._raw(ambient, out)

    def coefficients_in(self, var: str) -> Dict[int, "Poly"]:
        """View as a univariate polynomial in ``var``: power -> coefficient."""
        i = self._index(var)
        out: Dict[int, Dict[Monomial, Rational]] = {}
        for m, c in self.terms.items():
            out.setdefault(m[i], {})[m[:i] + (0,) + m[i + 1:]] = c
        return {k: Poly._raw(self.ambient, t) for k, t in out.items()}

    def homogeneous_component(self, d: int) -> "Poly":
        return Poly._raw(self.ambient, {m: c for m, c in self.terms.items() if sum(m) == d})

    def valuation(self, var: str):
        """Largest power of ``var`` dividing the polynomial (inf for zero)."""
        i = self._index(var)
        if not self.terms:
            return math.inf
        return min(m[i] for m in self.terms)

    # -- printing ------------------------------------------------------------
    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda mc: grlex_key(mc[0]), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k, (m, c) in enumerate(self.sorted_terms()):
            mono = "*".join(
                v if e == 1 else f"{v}^{e}" for v, e in zip(self.ambient, m) if e
            )
            neg = c < 0
            a = -c if neg else c
            if not mono:
                body = format_rational(a)
            elif a == 1:
                body = mono
            else:
                body = f"{format_rational(a)}*{mono}"
            if k == 0:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    def __repr__(self):
        return f"Poly({str(self)!r}, ambient={list(self.ambient)})"


# -- division, gcd -----------------------------------------------------------

def _mono_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def exact_divide(p: Poly, q: Poly) -> Poly | None:
    """Return ``r`` with ``p == q*r``, or ``None`` when ``q`` does not divide ``p``."""
    if q.is_zero():
        raise ZeroDivisionError("exact_divide by the zero polynomial")
    if p.ambient != q.ambient:
        raise ValueError("ambient mismatch")
    if p.is_zero():
        return p
    lm_q = q.leading_monomial(grlex_key)
    lc_q = q.terms[lm_q]
    q_rest = [(m, c) for m, c in q.terms.items() if m != lm_q]
    rem = dict(p.terms)
    quot: Dict[Monomial, Rational] = {}
    while rem:
        m = max(rem, key=grlex_key)
        if not _mono_divides(lm_q, m):
            return None
        c = rem.pop(m) / lc_q
        shift = tuple(x - y for x, y in zip(m, lm_q))
        quot[shift] = c
        for mq, cq in q_rest:
            t = tuple(x + y for x, y in zip(mq, shift))
            s = rem.get(t, mpq(0)) - c * cq
            if s:
                rem[t] = s
            else:
                rem.pop(t, None)
    return Poly._raw(p.ambient, quot)


def _content_and_primitive(p: Poly, var: str):
    coeffs = p.coefficients_in(var)
    cont = None
    for c in coeffs.values():
        cont = c if cont is None else gcd(cont, c)
        if cont.is_constant():
            break
    cont = cont.monic()
    prim = exact_divide(p, cont)
    return cont, prim


def _prem(a: Poly, b: Poly, var: str) -> Poly:
    """Pseudo-remainder of ``a`` by ``b`` as univariates in ``var``."""
    i = a._index(var)
    db = b.degree_in(var)
    cb = b.coefficients_in(var)
    lcb = cb[db]
    e = [0] * a.nvars
    r = a
    while not r.is_zero() and r.degree_in(var) >= db:
        dr = r.degree_in(var)
        lcr = r.coefficients_in(var)[dr]
        e[i] = dr - db
        shift = Poly._raw(a.ambient, {tuple(e): mpq(1)})
        r = lcb * r - lcr * shift * b
    return r


def gcd(p: Poly, q: Poly) -> Poly:
    """Monic (grlex) greatest common divisor over Q.

    Recursive content / primitive-part scheme with primitive pseudo-remainder
    sequences in the last variable that occurs.  This is the slow spot of the
    rational-function layer.
    """
    if p.ambient != q.ambient:
        raise ValueError("ambient mismatch")
    if p.is_zero():
        return q.monic()
    if q.is_zero():
        return p.monic()
    if p.is_constant() or q.is_constant():
        return Poly.constant(p.ambient, 1)
    used = set(p.support_vars()) | set(q.support_vars())
    var = [v for v in p.ambient if v in used][-1]
    if p.degree_in(var) == 0:
        cont_q, _ = _content_and_primitive(q, var)
        return gcd(p, cont_q)
    if q.degree_in(var) == 0:
        cont_p, _ = _content_and_primitive(p, var)
        return gcd(cont_p, q)
    cp, a = _content_and_primitive(p, var)
    cq, b = _content_and_primitive(q, var)
    c = gcd(cp, cq)
    if a.degree_in(var) < b.degree_in(var):
        a, b = b, a
    while True:
        r = _prem(a, b, var)
        if r.is_zero():
            g = b
            break
        if r.degree_in(var) == 0:
            g = Poly.constant(p.ambient, 1)
            break
        a, b = b, _content_and_primitive(r, var)[1]
    g = _content_and_primitive(g, var)[1]
    return (c * g).monic()


def partial_derivative(p, var: str):
    """Formal partial derivative of a Poly or RatFunc."""
    return p.diff(var)


def evaluate(p, point: Sequence[Number]) -> Rational:
    return p.evaluate(point)


# -- rational functions ------------------------------------------------------

class RatFunc:
    """Reduced quotient of polynomials with monic (grlex) denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None, *, reduced: bool = False):
        if den is None:
            den = Poly.constant(num.ambient, 1)
        if num.ambient != den.ambient:
            raise ValueError("ambient mismatch between numerator and denominator")
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if not reduced:
            if num.is_zero():
                den = Poly.constant(num.ambient, 1)
            elif not den.is_constant():
                g = gcd(num, den)
                if not g.is_constant():
                    num = exact_divide(num, g)
                    den = exact_divide(den, g)
            lc = den.leading_coefficient()
            if lc != 1:
                num = num * (1 / lc)
                den = den * (1 / lc)
        self.num = num
        self.den = den

    @classmethod
    def coerce(cls, x, ambient: Sequence[str] | None = None) -> "RatFunc":
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, Poly):
            return cls(x, Poly.constant(x.ambient, 1), reduced=True)
        if ambient is None:
            raise TypeError("ambient required to coerce a number")
        return cls(Poly.constant(ambient, x), reduced=False)

    @property
    def ambient(self):
        return self.num.ambient

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def as_poly(self) -> Poly:
        if not self.is_polynomial():
            raise ValueError(f"{self} is not a polynomial")
        return self.num * (1 / self.den.constant_term())

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def _other(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            if other.ambient != self.ambient:
                raise ValueError("ambient mismatch")
            return other
        return RatFunc.coerce(other, self.ambient)

    def __add__(self, other):
        o = self._other(other)
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, reduced=True)

    def __sub__(self, other):
        return self + (-self._other(other))

    def __rsub__(self, other):
        return self._other(other) + (-self)

    def __mul__(self, other):
        o = self._other(other)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._other(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return RatFunc.coerce(1, self.ambient) / (self ** -k)
        return RatFunc(self.num ** k, self.den ** k, reduced=True)

    def __eq__(self, other):
        if isinstance(other, (RatFunc, Poly)):
            o = RatFunc.coerce(other)
            return self.num == o.num and self.den == o.den
        try:
            c = as_rational(other)
        except TypeError:
            return NotImplemented
        return self.is_polynomial() and self.num == c

    def __hash__(self):
        return hash((self.num, self.den))

    def diff(self, var: str) -> "RatFunc":
        if self.is_polynomial():
            return RatFunc(self.num.diff(var), self.den, reduced=True)
        n, d = self.num, self.den
        return RatFunc(n.diff(var) * d - n * d.diff(var), d * d)

    def evaluate(self, point: Sequence[Number]) -> Rational:
        d = self.den.evaluate(point)
        if not d:
            raise ZeroDivisionError("denominator vanishes at the point")
        return self.num.evaluate(point) / d

    def embed(self, ambient: Sequence[str]) -> "RatFunc":
        return RatFunc(self.num.embed(ambient), self.den.embed(ambient), reduced=True)

    def valuation(self, var: str):
        """Adic valuation along ``var = 0`` (difference of numerator and denominator valuations)."""
        if self.is_zero():
            return math.inf
        return self.num.valuation(var) - self.den.valuation(var)

    def __str__(self):
        if self.is_polynomial():
            return str(self.as_poly())
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"RatFunc({str(self)!r}, ambient={list(self.ambient)})"


# -- parser ------------------------------------------------------------------

class ParseError(ValueError):
    def __init__(self, message: str, position: int, text: str):
        super().__init__(f"{message} at position {position}: {text!r}")
        self.position = position
        self.text = text


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9_']*)|(.))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m.group(0).strip() == "":
            break
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            tokens.append(("int", m.group(1), start))
        elif m.group(2) is not None:
            tokens.append(("var", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", start, text)
            tokens.append((ch, ch, start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, ambient: Tuple[str, ...], rational: bool):
        self.text = text
        self.ambient = ambient
        self.rational = rational
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self, k=0):
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def take(self, kind):
        tok = self.peek()
        if tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[1] or 'end of input'!r}", tok[2], self.text)
        self.i += 1
        return tok

    def fail(self, msg):
        raise ParseError(msg, self.peek()[2], self.text)

    def parse(self) -> RatFunc:
        if self.peek()[0] == "end":
            self.fail("empty expression")
        value = self.expr()
        if self.peek()[0] != "end":
            self.fail(f"unexpected token {self.peek()[1]!r}")
        return value

    def expr(self):
        value = self.term()
        while self.peek()[0] in "+-" and self.peek()[0] != "end":
            op = self.take(self.peek()[0])[0]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.factor()
        while self.peek()[0] in ("*", "/"):
            op, _, pos = self.take(self.peek()[0])
            rhs = self.factor()
            if op == "*":
                value = value * rhs
            else:
                if rhs.is_zero():
                    raise ParseError("division by the zero polynomial", pos, self.text)
                if not self.rational and not (rhs.is_polynomial() and rhs.as_poly().is_constant()):
                    raise ParseError("'/' by a nonconstant factor needs rational mode", pos, self.text)
                value = value / rhs
        return value

    def factor(self):
        if self.peek()[0] == "-":
            self.take("-")
            return -self.factor()
        value = self.base()
        if self.peek()[0] == "^":
            self.take("^")
            tok = self.take("int")
            value = value ** int(tok[1])
        return value

    def base(self):
        kind, val, pos = self.peek()
        if kind == "int":
            self.take("int")
            num = int(val)
            if self.peek()[0] == "/" and self.peek(1)[0] == "int":
                self.take("/")
                den_tok = self.take("int")
                den = int(den_tok[1])
                if den == 0:
                    raise ParseError("division by the zero polynomial", den_tok[2], self.text)
                return RatFunc.coerce(mpq(num, den), self.ambient)
            return RatFunc.coerce(num, self.ambient)
        if kind == "var":
            self.take("var")
            if val not in self.ambient:
                raise ParseError(f"unknown variable {val!r}", pos, self.text)
            return RatFunc.coerce(Poly.var(self.ambient, val))
        if kind == "(":
            self.take("(")
            value = self.expr()
            self.take(")")
            return value
        self.fail(f"unexpected token {val or 'end of input'!r}")


def parse_expression(text: str, ambient: Sequence[str], rational: bool = True) -> RatFunc:
    """Parse ``text`` into a reduced :class:`RatFunc` over ``ambient``."""
    return _Parser(text, _check_ambient(ambient), rational).parse()


def parse_poly(text: str, ambient: Sequence[str]) -> Poly:
    """Parse a polynomial; '/' is accepted only inside rational literals."""
    return parse_expression(text, ambient, rational=False).as_poly()
