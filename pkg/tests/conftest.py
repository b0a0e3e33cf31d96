import random

import pytest
import sympy

from vfcert.darboux import OneForm
from vfcert.linalg import QMatrix
from vfcert.polyring import Poly, RatFunc, as_rational
from vfcert.vectorfield import VectorField

NAMES = {1: ("x",), 2: ("x", "y"), 3: ("x", "y", "z")}


def random_poly(rng, vars, max_deg, terms=4, coeff=5, min_deg=0):
    """Random polynomial with small integer coefficients and degree <= max_deg."""
    t = {}
    n = len(vars)
    for _ in range(terms):
        d = rng.randint(min_deg, max_deg)
        m = [0] * n
        for _ in range(d):
            m[rng.randrange(n)] += 1
        t[tuple(m)] = rng.randint(-coeff, coeff)
    return Poly(vars, t)


def random_field(rng, n, max_deg, terms=4, coeff=5, nonzero=True):
    vars = NAMES[n]
    while True:
        v = VectorField(vars, [random_poly(rng, vars, max_deg, terms, coeff) for _ in vars])
        if not nonzero or not v.is_zero():
            return v


def to_sympy(p, symbols=None):
    """Independent conversion of a Poly or RatFunc to a sympy expression."""
    if isinstance(p, RatFunc):
        return to_sympy(p.num, symbols) / to_sympy(p.den, symbols)
    syms = symbols or sympy.symbols(p.ambient)
    out = sympy.Integer(0)
    for m, c in p.terms.items():
        term = sympy.Rational(int(c.numerator), int(c.denominator))
        for s, e in zip(syms, m):
            term *= s**e
        out += term
    return out


@pytest.fixture
def rng():
    return random.Random(12345)


HALPHEN_VARS = ("x1", "x2", "x3")


def halphen(a1, a2, a3):
    """The Halphen system with rational parameters."""
    x1, x2, x3 = Poly.gens(HALPHEN_VARS)
    a1, a2, a3 = (as_rational(a) for a in (a1, a2, a3))
    return VectorField(
        HALPHEN_VARS,
        [
            a1 * x1**2 + (1 - a1) * (x1 * x2 + x1 * x3 - x2 * x3),
            a2 * x2**2 + (1 - a2) * (x1 * x2 - x1 * x3 + x2 * x3),
            a3 * x3**2 + (1 - a3) * (-x1 * x2 + x1 * x3 + x2 * x3),
        ],
    )


SCHWARZ_VARS = ("y", "y'", "y''")


def schwarzian(R):
    """The three fields attached to a Schwarzian equation with coefficient R(y)."""
    y, y1, y2 = (RatFunc(p) for p in Poly.gens(SCHWARZ_VARS))
    zero = RatFunc(Poly.zero(SCHWARZ_VARS))
    R = RatFunc.coerce(R, SCHWARZ_VARS)
    v1 = VectorField(SCHWARZ_VARS, [y1, y2, -R * y1**3 + RatFunc.coerce(3, SCHWARZ_VARS) / 2 * y2**2 / y1])
    v2 = VectorField(SCHWARZ_VARS, [zero, y1, y2 * 2])
    v3 = VectorField(SCHWARZ_VARS, [zero, zero, y1 * 2])
    return v1, v2, v3


def invariant_linear_pair(rng, n):
    """A linear field A*x with a rational left eigenvector: A = S D S^-1, w = a row of S^-1."""
    while True:
        S = QMatrix.from_rows([[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)])
        try:
            Si = S.inverse()
        except (ZeroDivisionError, ValueError):
            continue
        break
    D = QMatrix.from_rows([[rng.randint(-4, 4) if i == j else 0 for j in range(n)] for i in range(n)])
    A = S @ D @ Si
    vars = ("x", "y", "z")[:n]
    X = Poly.gens(vars)
    comps = [sum((A[i, j] * X[j] for j in range(n)), Poly.zero(vars)) for i in range(n)]
    row = rng.randrange(n)
    w = OneForm(vars, [Si[row, j] for j in range(n)])
    return VectorField(vars, comps), w, D[row, row]
