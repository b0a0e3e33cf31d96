"""Exact rational matrices, characteristic polynomials and certified root enclosures.

Univariate polynomials are handled internally as dense coefficient lists
(lowest degree first) of ``mpq``.  Public entry points accept and return
univariate :class:`~vfcert.polyring.Poly` values as well.

Root enclosures are certified without floating point trust: real roots are
isolated with Sturm sequences and refined by bisection; non-real roots start
from numerical approximations, are polished by exact Newton steps, and are
certified by the inclusion disk ``|z - root| <= deg * |p(z)/p'(z)|``.  When all
enclosures are pairwise disjoint, each holds exactly one root.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd as igcd, lcm
from typing import List, Sequence, Tuple

import mpmath
from gmpy2 import isqrt, mpq, mpz

from .polyring import Poly, Rational, as_rational

Dense = List[Rational]


# -- matrices ----------------------------------------------------------------

@dataclass(frozen=True)
class QMatrix:
    rows: int
    cols: int
    entries: Tuple[Rational, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entries length must equal rows*cols")
        object.__setattr__(self, "entries", tuple(as_rational(x) for x in self.entries))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "QMatrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), ncols, tuple(x for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls(n, n, tuple(mpq(1 if i == j else 0) for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, r: int, c: int) -> "QMatrix":
        return cls(r, c, (mpq(0),) * (r * c))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i):
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def tolist(self):
        return [self.row(i) for i in range(self.rows)]

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __add__(self, other: "QMatrix"):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return QMatrix(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "QMatrix"):
        return self + other.scale(-1)

    def scale(self, c) -> "QMatrix":
        c = as_rational(c)
        return QMatrix(self.rows, self.cols, tuple(c * a for a in self.entries))

    def __matmul__(self, other: "QMatrix") -> "QMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        out = []
        for i in range(self.rows):
            r = self.row(i)
            for j in range(other.cols):
                s = mpq(0)
                for k in range(self.cols):
                    if r[k]:
                        s += r[k] * other[k, j]
                out.append(s)
        return QMatrix(self.rows, other.cols, tuple(out))

    def trace(self):
        if not self.is_square():
            raise ValueError("trace of a non-square matrix")
        return sum((self[i, i] for i in range(self.rows)), mpq(0))

    def inverse(self) -> "QMatrix":
        n = self.rows
        if not self.is_square():
            raise ValueError("inverse of a non-square matrix")
        aug = [self.row(i) + [mpq(1 if i == j else 0) for j in range(n)] for i in range(n)]
        red, pivots = _rref(aug)
        if pivots[:n] != list(range(n)):
            raise ZeroDivisionError("singular matrix")
        return QMatrix.from_rows([r[n:] for r in red[:n]])

    def __str__(self):
        return "[" + ", ".join("[" + ", ".join(str(x) for x in self.row(i)) + "]" for i in range(self.rows)) + "]"


def _rref(rows: List[List[Rational]]):
    rows = [list(r) for r in rows]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows, pivots


def rref(m: QMatrix):
    rows, pivots = _rref(m.tolist())
    return QMatrix.from_rows(rows) if rows else m, pivots


def nullspace(m: QMatrix) -> List[List[Rational]]:
    """Basis of the right kernel; one vector per free column, with a 1 there."""
    if m.rows == 0:
        return [[mpq(1 if i == j else 0) for i in range(m.cols)] for j in range(m.cols)]
    rows, pivots = _rref(m.tolist())
    free = [c for c in range(m.cols) if c not in pivots]
    basis = []
    for f in free:
        v = [mpq(0)] * m.cols
        v[f] = mpq(1)
        for r, p in enumerate(pivots):
            v[p] = -rows[r][f]
        basis.append(v)
    return basis


def char_poly(m: QMatrix, var: str = "t") -> Poly:
    """Monic ``det(t*I - m)`` by the Faddeev-LeVerrier recursion."""
    return Poly((var,), {(k,): c for k, c in enumerate(char_poly_dense(m)) if c})


def char_poly_dense(m: QMatrix) -> Dense:
    if not m.is_square():
        raise ValueError("characteristic polynomial of a non-square matrix")
    n = m.rows
    coeffs = [mpq(0)] * (n + 1)
    coeffs[n] = mpq(1)
    ident = QMatrix.identity(n)
    M = QMatrix.zeros(n, n)
    for k in range(1, n + 1):
        M = m @ M + ident.scale(coeffs[n - k + 1])
        coeffs[n - k] = -(m @ M).trace() / k
    return coeffs


# -- dense univariate arithmetic ---------------------------------------------

def to_dense(p: Poly) -> Dense:
    if p.nvars != 1:
        raise ValueError("expected a univariate polynomial")
    if p.is_zero():
        return []
    out = [mpq(0)] * (p.degree() + 1)
    for (e,), c in p.terms.items():
        out[e] = c
    return out


def from_dense(c: Sequence, var: str = "t") -> Poly:
    return Poly((var,), {(k,): v for k, v in enumerate(c) if v})


def _trim(a: Dense) -> Dense:
    a = list(a)
    while a and not a[-1]:
        a.pop()
    return a


def _deg(a: Dense) -> int:
    return len(_trim(a)) - 1


def _eval(a: Sequence, x):
    s = mpq(0)
    for c in reversed(a):
        s = s * x + c
    return s


def _deriv(a: Dense) -> Dense:
    return [c * k for k, c in enumerate(a)][1:]


def _divmod(a: Dense, b: Dense):
    a, b = _trim(a), _trim(b)
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    q = [mpq(0)] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    lb = b[-1]
    while len(r) >= len(b) and r:
        c = r[-1] / lb
        shift = len(r) - len(b)
        q[shift] = c
        for i, bc in enumerate(b):
            r[shift + i] -= c * bc
        r = _trim(r)
    return q, r


def _monic(a: Dense) -> Dense:
    a = _trim(a)
    if not a:
        return a
    inv = 1 / a[-1]
    return [c * inv for c in a]


def _gcd(a: Dense, b: Dense) -> Dense:
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _divmod(a, b)[1]
    return _monic(a)


def squarefree_part(a: Sequence) -> Dense:
    """Monic squarefree part ``a / gcd(a, a')``."""
    a = _trim([as_rational(c) for c in a])
    if not a:
        raise ValueError("squarefree part of the zero polynomial")
    g = _gcd(a, _deriv(a))
    return _monic(_divmod(a, g)[0])


def is_squarefree(a: Sequence) -> bool:
    a = _trim([as_rational(c) for c in a])
    return _deg(_gcd(a, _deriv(a))) == 0


def _primitive_integer(a: Dense) -> List[mpz]:
    L = 1
    for c in a:
        L = lcm(L, int(c.denominator))
    ints = [mpz(c * L) for c in a]
    g = 0
    for c in ints:
        g = igcd(g, int(c))
    return [c // g for c in ints] if g else ints


def _sturm(a: Dense) -> List[Dense]:
    seq = [_trim(a), _trim(_deriv(a))]
    while seq[-1] and _deg(seq[-1]) > 0:
        r = _divmod(seq[-2], seq[-1])[1]
        if not r:
            break
        seq.append([-c for c in r])
    return [s for s in seq if s]


def _variations(seq: List[Dense], x) -> int:
    signs = [s for s in (_sign(_eval(p, x)) for p in seq) if s]
    return sum(1 for u, v in zip(signs, signs[1:]) if u != v)


def _floor(x) -> int:
    x = as_rational(x)
    return int(x.numerator // x.denominator)


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _cauchy_bound(a: Dense) -> Rational:
    lead = abs(a[-1])
    return 1 + max((abs(c) / lead for c in a[:-1]), default=mpq(0))


def _isolate_real(a: Dense) -> List[Tuple[Rational, Rational]]:
    """Disjoint open intervals (lo, hi), one per real root of squarefree ``a``; endpoints are not roots."""
    a = _trim(a)
    if len(a) <= 1:
        return []
    seq = _sturm(a)
    B = _cauchy_bound(a)
    out = []
    stack = [(-B, B)]
    while stack:
        lo, hi = stack.pop()
        count = _variations(seq, lo) - _variations(seq, hi)
        if count == 0:
            continue
        if count == 1:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        k = 3
        while not _eval(a, mid):
            mid = lo + (hi - lo) * mpq(k, 2 * k + 1)
            k += 1
        stack.append((lo, mid))
        stack.append((mid, hi))
    out.sort()
    return out


def _bisect(a: Dense, lo, hi, slo=None):
    """Halve an isolating interval with sign change; returns (lo, hi) or an exact root as (r, r)."""
    if slo is None:
        slo = _sign(_eval(a, lo))
    mid = (lo + hi) / 2
    s = _sign(_eval(a, mid))
    if s == 0:
        return mid, mid
    if s == slo:
        return mid, hi
    return lo, mid


def rational_roots(a: Sequence) -> List[Rational]:
    """All distinct rational roots of a univariate polynomial, ascending.

    For an integer polynomial with leading coefficient ``L`` every rational
    root ``r`` has ``L*r`` integral, so each isolating interval is narrowed
    below width ``1/L`` and its single integer candidate is tested exactly.
    """
    a = _trim([as_rational(c) for c in a])
    if not a:
        raise ValueError("rational roots of the zero polynomial")
    sqf = squarefree_part(a)
    if len(sqf) <= 1:
        return []
    ints = _primitive_integer(sqf)
    L = abs(ints[-1])
    roots = []
    for lo, hi in _isolate_real(sqf):
        slo = _sign(_eval(sqf, lo))
        while (hi - lo) * L >= 1:
            lo, hi = _bisect(sqf, lo, hi, slo)
            if lo == hi:
                break
        if lo == hi:
            roots.append(lo)
            continue
        k = _floor(hi * L)
        cand = mpq(k, int(L))
        if lo < cand < hi and not _eval(sqf, cand):
            roots.append(cand)
    return sorted(roots)


# -- certified enclosures ----------------------------------------------------

def _cadd(a, b):
    return (a[0] + b[0], a[1] + b[1])


def _cmul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _ceval(p: Dense, z):
    s = (mpq(0), mpq(0))
    for c in reversed(p):
        s = _cmul(s, z)
        s = (s[0] + c, s[1])
    return s


def _cabs2(z):
    return z[0] * z[0] + z[1] * z[1]


def _cdiv(a, b):
    d = _cabs2(b)
    return ((a[0] * b[0] + a[1] * b[1]) / d, (a[1] * b[0] - a[0] * b[1]) / d)


def _sqrt_upper(q) -> Rational:
    """A dyadic rational >= sqrt(q) within relative error about 2**-60."""
    q = as_rational(q)
    if q <= 0:
        return mpq(0)
    e = int(q.denominator).bit_length() - int(q.numerator).bit_length()
    k = 64 + max(0, e // 2 + 1)
    num = q.numerator * (mpz(4) ** k)
    t = isqrt(num // q.denominator) + 1
    return mpq(t, mpz(2) ** k)


def _round_dyadic(x, bits: int) -> Rational:
    s = mpz(2) ** bits
    return mpq(_floor(x * s + mpq(1, 2)), s)


@dataclass(frozen=True)
class RootEnclosure:
    """Closed disk (``re + i*im``, ``radius``) holding exactly one root of ``poly``."""

    poly: Poly
    re: Rational
    im: Rational
    radius: Rational

    @property
    def center(self):
        return (self.re, self.im)

    def is_real(self) -> bool:
        return self.im == 0

    def is_exact(self) -> bool:
        return self.radius == 0

    def __str__(self):
        c = f"{float(self.re):.12g}" if not self.im else f"{float(self.re):.12g}{float(self.im):+.12g}i"
        return f"{c} +/- {float(self.radius):.3g}"


def _inclusion_radius(p: Dense, dp: Dense, z) -> Rational | None:
    fz = _ceval(p, z)
    if not fz[0] and not fz[1]:
        return mpq(0)
    dz = _ceval(dp, z)
    d2 = _cabs2(dz)
    if not d2:
        return None
    ratio = _cabs2(fz) / d2
    return (len(p) - 1) * _sqrt_upper(ratio)


def _newton_certify(p: Dense, z, target: Rational, bits: int = 64, max_iter: int = 200):
    """Exact Newton polishing from ``z`` until the inclusion radius is <= target."""
    dp = _deriv(p)
    # working precision tracks the target so refinement cost grows linearly
    cap = max(bits, int(target.denominator).bit_length() - int(target.numerator).bit_length() + 16)
    for _ in range(max_iter):
        r = _inclusion_radius(p, dp, z)
        if r is not None and r <= target:
            return z, r
        dz = _ceval(dp, z)
        if not _cabs2(dz):
            z = (z[0] + mpq(1, 2**bits), z[1] + mpq(1, 2**bits))
            continue
        step = _cdiv(_ceval(p, z), dz)
        z = (z[0] - step[0], z[1] - step[1])
        bits = min(bits * 2, cap)
        z = (_round_dyadic(z[0], bits), _round_dyadic(z[1], bits))
    raise ArithmeticError("Newton refinement did not converge")


def _mpf_to_mpq(x) -> Rational:
    sign, man, exp, _ = mpmath.mpf(x)._mpf_
    v = mpq(int(man)) * mpq(2) ** exp if exp >= 0 else mpq(int(man), mpz(2) ** (-exp))
    return -v if sign else v


def _disjoint(e1, e2) -> bool:
    d2 = (e1[0] - e2[0]) ** 2 + (e1[1] - e2[1]) ** 2
    return d2 > (e1[2] + e2[2]) ** 2


def _numeric_complex_roots(p: Dense, dps: int):
    with mpmath.workdps(dps):
        coeffs = [mpmath.mpf(int(c.numerator)) / int(c.denominator) for c in reversed(p)]
        roots = mpmath.polyroots(coeffs, maxsteps=200 + 20 * len(p), extraprec=4 * dps)
    return roots


def isolate_roots(p, precision=mpq(1, 2**40), var: str = "t") -> List[RootEnclosure]:
    """Certified, pairwise-disjoint enclosures of all complex roots of a squarefree ``p``.

    Real roots come first (ascending), then non-real roots as conjugate pairs
    (positive imaginary part first) ordered by real part.  Rational roots get
    radius zero.
    """
    if isinstance(p, Poly):
        var = p.ambient[0]
        dense = to_dense(p)
    else:
        dense = _trim([as_rational(c) for c in p])
    if not dense:
        raise ValueError("isolate_roots of the zero polynomial")
    if not is_squarefree(dense):
        raise ValueError("isolate_roots needs a squarefree polynomial; divide by gcd(p, p') first")
    precision = as_rational(precision)
    dense = _monic(dense)
    poly = from_dense(dense, var)
    n = len(dense) - 1
    encl: List[Tuple[Rational, Rational, Rational]] = []

    rats = rational_roots(dense)
    rest = dense
    for r in rats:
        encl.append((r, mpq(0), mpq(0)))
        rest = _divmod(rest, [-r, mpq(1)])[0]
    for lo, hi in _isolate_real(rest):
        slo = _sign(_eval(rest, lo))
        while (hi - lo) / 2 > precision:
            lo, hi = _bisect(rest, lo, hi, slo)
        encl.append(((lo + hi) / 2, mpq(0), (hi - lo) / 2))
    encl.sort()
    nreal = len(encl)
    ncomplex = n - nreal
    if ncomplex:
        upper = _complex_upper_enclosures(rest, ncomplex // 2, precision, encl)
        for re, im, rad in upper:
            encl.append((re, im, rad))
            encl.append((re, -im, rad))
    return [RootEnclosure(poly, re, im, rad) for re, im, rad in encl]


def _complex_upper_enclosures(p: Dense, npairs: int, precision, real_encl):
    target = precision
    dps = 30
    for attempt in range(8):
        roots = _numeric_complex_roots(p, dps)
        upper = sorted((r for r in roots if r.imag > 0), key=lambda r: (float(r.real), float(r.imag)))
        if len(upper) != npairs:
            dps *= 2
            continue
        certified = []
        try:
            for r in upper:
                z0 = (_round_dyadic(_mpf_to_mpq(r.real), 64), _round_dyadic(_mpf_to_mpq(r.imag), 64))
                z, rad = _newton_certify(p, z0, target)
                if z[1] <= rad:
                    raise ArithmeticError("non-real enclosure touches the real axis")
                certified.append((z[0], z[1], rad))
        except ArithmeticError:
            dps *= 2
            target /= 16
            continue
        disks = list(real_encl) + certified + [(re, -im, rad) for re, im, rad in certified]
        if all(_disjoint(disks[i], disks[j]) for i in range(len(disks)) for j in range(i + 1, len(disks))):
            return sorted(certified)
        dps *= 2
        target /= 16
    raise ArithmeticError("could not certify complex root enclosures")


def refine(e: RootEnclosure) -> RootEnclosure:
    """A nested enclosure of the same root with at most half the radius."""
    if e.radius == 0:
        return e
    dense = to_dense(e.poly)
    if e.im == 0:
        lo, hi = e.re - e.radius, e.re + e.radius
        lo, hi = _bisect(dense, lo, hi)
        return RootEnclosure(e.poly, (lo + hi) / 2, mpq(0), (hi - lo) / 2)
    target = e.radius / 2
    z, rad = _newton_certify(dense, (e.re, e.im), target / 2)
    # nested in the old disk, so it still holds exactly one root
    while (z[0] - e.re) ** 2 + (z[1] - e.im) ** 2 > (e.radius - rad) ** 2 or rad > e.radius:
        target /= 4
        z, rad = _newton_certify(dense, z, target)
    return RootEnclosure(e.poly, z[0], z[1], rad)


def squarefree_decomposition(a: Sequence) -> List[Tuple[Dense, int]]:
    """Yun's algorithm: list of (monic squarefree factor, multiplicity)."""
    a = _monic([as_rational(c) for c in a])
    if _deg(a) <= 0:
        return []
    out = []
    da = _deriv(a)
    g = _gcd(a, da)
    b = _divmod(a, g)[0]
    c = _divmod(da, g)[0]
    d = [x - y for x, y in _zip_pad(c, _deriv(b))]
    k = 1
    while _deg(b) > 0:
        h = _gcd(b, d)
        if _deg(h) > 0:
            out.append((h, k))
        b = _divmod(b, h)[0]
        c = _divmod(d, h)[0]
        d = [x - y for x, y in _zip_pad(c, _deriv(b))]
        k += 1
    return out


def _zip_pad(a, b):
    n = max(len(a), len(b))
    return zip(list(a) + [mpq(0)] * (n - len(a)), list(b) + [mpq(0)] * (n - len(b)))
