"""Singular loci, linear parts and bounded non-resonance certification.

A resonance is a nonzero integer vector ``k`` with ``sum k_i * lambda_i = 0``
over the eigenvalues of the linear part.  :func:`resonance_check` decides the
question for ``max|k_i| <= K`` only.  Candidates are screened in bulk with an
integer box test over scaled enclosure centres; the few survivors are tested
with exact disk arithmetic, refined, and if still undecided sent to an exact
test: the ideal of the elementary symmetric relations plus ``sum k_i z_i`` is
the unit ideal iff no ordering of the roots satisfies the relation.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

import numpy as np
from gmpy2 import mpq

from .groebner import (
    DEFAULT_BUDGET,
    GroebnerBudgetExceeded,
    Ideal,
    buchberger,
    is_zero_dimensional,
)
from .linalg import (
    QMatrix,
    RootEnclosure,
    char_poly_dense,
    isolate_roots,
    refine,
    squarefree_decomposition,
)
from .polyring import Poly, Rational, as_rational, format_rational
from .vectorfield import VectorField

RESONANT = "RESONANT"
NONRESONANT = "NONRESONANT_UP_TO"
UNRESOLVED = "UNRESOLVED"


class NotSingular(ValueError):
    """The point is not a zero of the field; ``index`` is 1-based."""

    def __init__(self, index: int, value):
        super().__init__(f"component {index} evaluates to {format_rational(value)}, not 0")
        self.index = index
        self.value = value


@dataclass(frozen=True)
class SingularPoint:
    field: VectorField
    coords: Tuple[Rational, ...]

    def __init__(self, field: VectorField, coords: Sequence):
        coords = tuple(as_rational(c) for c in coords)
        if len(coords) != field.n:
            raise ValueError(f"point has {len(coords)} coordinates, field has {field.n} variables")
        for i, c in enumerate(field.components, 1):
            val = c.evaluate(coords)
            if val:
                raise NotSingular(i, val)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coords", coords)

    def to_json(self):
        return [format_rational(c) for c in self.coords]


def verify_singular(v: VectorField, coords: Sequence) -> SingularPoint:
    """SingularPoint when every component vanishes; raises NotSingular otherwise."""
    return SingularPoint(v, coords)


def singular_ideal(v: VectorField) -> Ideal:
    return Ideal(v.vars, list(v.polys()))


def sing_locus_finite(v: VectorField, budget: int = DEFAULT_BUDGET) -> bool:
    """Zero-dimensionality of ``<a_1, ..., a_n>`` (an empty locus counts as finite)."""
    return is_zero_dimensional(buchberger(singular_ideal(v), budget=budget))


def linear_part(v: VectorField, p: SingularPoint | Sequence) -> QMatrix:
    """Matrix with entry ``(i, j) = d a_i / d x_j`` at ``p``."""
    if not isinstance(p, SingularPoint):
        p = SingularPoint(v, p)
    elif p.field != v:
        p = SingularPoint(v, p.coords)
    return QMatrix.from_rows(
        [[a.diff(x).evaluate(p.coords) for x in v.vars] for a in v.components]
    )


@dataclass
class ResonanceVerdict:
    status: str
    K: int
    eigen_enclosures: List[RootEnclosure]
    witness: Tuple[int, ...] | None = None
    candidates: List[Tuple[int, ...]] = field(default_factory=list)

    def to_json(self) -> dict:
        out = {"status": self.status, "K": self.K}
        if self.witness is not None:
            out["witness"] = list(self.witness)
        if self.status == UNRESOLVED:
            out["candidates"] = [list(k) for k in self.candidates]
        out["eigenvalues"] = [
            {"re": format_rational(e.re), "im": format_rational(e.im), "radius": format_rational(e.radius)}
            for e in self.eigen_enclosures
        ]
        return out

    def __str__(self):
        if self.status == RESONANT:
            return f"RESONANT, witness k = {list(self.witness)}"
        if self.status == NONRESONANT:
            return f"non-resonant up to height K = {self.K}"
        return f"UNRESOLVED at height K = {self.K}, candidates {[list(k) for k in self.candidates]}"


def eigen_enclosures(A: QMatrix, precision=mpq(1, 2**40)) -> List[RootEnclosure]:
    """Enclosures of the eigenvalues of ``A`` listed with multiplicity.

    Real eigenvalues come first in ascending order, then conjugate pairs
    ordered by real part with the positive imaginary part first.
    """
    cp = char_poly_dense(A)
    out = []
    for factor, mult in squarefree_decomposition(cp):
        for e in isolate_roots(factor, precision):
            out.extend([e] * mult)
    out.sort(key=lambda e: (0 if e.is_real() else 1, e.re, -e.im))
    return out


def _canonical(k: Sequence[int]) -> Tuple[int, ...]:
    g = 0
    for x in k:
        g = math.gcd(g, int(x))
    k = [int(x) // g for x in k] if g else [int(x) for x in k]
    first = next((x for x in k if x), 0)
    return tuple(-x for x in k) if first < 0 else tuple(k)


def _excluded(k, encl) -> bool:
    """``|sum k_i c_i| > sum |k_i| r_i``: zero is outside the disk sum."""
    re = sum(ki * e.re for ki, e in zip(k, encl) if ki)
    im = sum(ki * e.im for ki, e in zip(k, encl) if ki)
    rad = sum(abs(ki) * e.radius for ki, e in zip(k, encl) if ki)
    return re * re + im * im > rad * rad


def _exactly_zero(k, encl) -> bool:
    if not all(e.is_exact() or not ki for ki, e in zip(k, encl)):
        return False
    re = sum(ki * e.re for ki, e in zip(k, encl) if ki)
    im = sum(ki * e.im for ki, e in zip(k, encl) if ki)
    return not re and not im


def _box_survivors(encl, K: int) -> List[Tuple[int, ...]]:
    """Canonical k (first nonzero entry positive) not excluded by an int64 box test.

    Centres and radii are scaled by ``2**b`` and rounded outward, so
    ``|Re S| > R`` or ``|Im S| > R`` on integers proves ``0`` is not in the
    disk sum.  Survivors still need the exact test.
    """
    n = len(encl)
    mag = max(abs(e.re) + abs(e.im) + e.radius for e in encl) + 1
    b = 62 - (n * K * int(mag) + 1).bit_length() - 3
    if b < 24:
        return [k for k in _all_canonical(n, K)]
    s = 1 << b
    C_re = np.array([_floor_int(e.re * s) for e in encl], dtype=np.int64)
    C_im = np.array([_floor_int(e.im * s) for e in encl], dtype=np.int64)
    # floor moves each coordinate by < 1 unit, so widen by 2 units per eigenvalue
    R = np.array([-_floor_int(-e.radius * s) + 2 for e in encl], dtype=np.int64)
    survivors = []
    rng = np.arange(-K, K + 1, dtype=np.int64)
    for p in range(n):
        tail = n - p - 1
        if tail:
            grids = np.meshgrid(*([rng] * tail), indexing="ij")
            T = np.stack([g.ravel() for g in grids], axis=1)
        else:
            T = np.zeros((1, 0), dtype=np.int64)
        t_re = T @ C_re[p + 1:] if tail else np.zeros(1, dtype=np.int64)
        t_im = T @ C_im[p + 1:] if tail else np.zeros(1, dtype=np.int64)
        t_rad = np.abs(T) @ R[p + 1:] if tail else np.zeros(1, dtype=np.int64)
        for kp in range(1, K + 1):
            sre = t_re + kp * C_re[p]
            sim = t_im + kp * C_im[p]
            rad = t_rad + kp * R[p]
            keep = (np.abs(sre) <= rad) & (np.abs(sim) <= rad)
            for row in T[keep]:
                survivors.append((0,) * p + (kp,) + tuple(int(x) for x in row))
    return survivors


def _floor_int(q) -> int:
    q = as_rational(q)
    return int(q.numerator // q.denominator)


def _all_canonical(n: int, K: int):
    for k in itertools.product(range(-K, K + 1), repeat=n):
        first = next((x for x in k if x), 0)
        if first > 0:
            yield k


def _symmetric_ideal(cp_monic: Sequence[Rational], k: Sequence[int]) -> Ideal:
    """``e_j(z) = (-1)^j a_{n-j}`` for all j, plus ``sum k_i z_i``."""
    n = len(k)
    zs = tuple(f"z{i}" for i in range(1, n + 1))
    Z = Poly.gens(zs)
    gens = []
    for j in range(1, n + 1):
        e = Poly.zero(zs)
        for combo in itertools.combinations(range(n), j):
            term = Poly.constant(zs, 1)
            for i in combo:
                term = term * Z[i]
            e = e + term
        gens.append(e - (-1) ** j * cp_monic[n - j])
    lin = Poly.zero(zs)
    for ki, z in zip(k, Z):
        lin = lin + ki * z
    gens.append(lin)
    return Ideal(zs, gens)


def _decide_candidate(k, encl, cp, precision_budget, budget):
    """Returns ``(status, witness)`` for one surviving candidate; may refine ``encl`` in place."""
    for _ in range(precision_budget + 1):
        if _exactly_zero(k, encl):
            return RESONANT, _canonical(k)
        if _excluded(k, encl):
            return None, None
        if all(e.is_exact() for e in encl):
            break
        encl[:] = _refine_all(encl)
    try:
        gb = buchberger(_symmetric_ideal(cp, k), budget=budget)
    except GroebnerBudgetExceeded:
        return UNRESOLVED, None
    if gb.is_unit():
        return None, None
    # some ordering of the roots satisfies the relation; find which one
    n = len(k)
    for _ in range(precision_budget + 1):
        alive = []
        for perm in itertools.permutations(range(n)):
            w = [0] * n
            for i, j in enumerate(perm):
                w[j] = k[i]
            if not _excluded(w, encl):
                alive.append(tuple(w))
        alive = sorted(set(alive))
        if len(alive) == 1:
            return RESONANT, _canonical(alive[0])
        if all(e.is_exact() for e in encl):
            break
        encl[:] = _refine_all(encl)
    return UNRESOLVED, None


def _refine_all(encl: List[RootEnclosure]) -> List[RootEnclosure]:
    cache = {}
    out = []
    for e in encl:
        key = (e.re, e.im, e.radius)
        if key not in cache:
            cache[key] = refine(e)
        out.append(cache[key])
    return out


def resonance_check(
    A: QMatrix,
    K: int = 50,
    precision_budget: int = 64,
    budget: int = DEFAULT_BUDGET,
) -> ResonanceVerdict:
    """Bounded decision of ``sum k_i lambda_i = 0`` for ``0 < max|k_i| <= K``.

    Forced branches first: a repeated eigenvalue gives ``e_i - e_j``, a zero
    eigenvalue gives ``e_i``, and two rational eigenvalues ``a, b`` give the
    cross-multiplied ``b*e_i - a*e_j``.  Witnesses index the eigenvalues in
    the order of ``eigen_enclosures``.
    """
    if not A.is_square():
        raise ValueError("resonance_check needs a square matrix")
    if K < 1:
        raise ValueError("height bound K must be at least 1")
    n = A.rows
    cp = char_poly_dense(A)
    encl = eigen_enclosures(A)
    snapshot = list(encl)

    def unit(i, j=None, a=1, b=-1):
        k = [0] * n
        k[i] = a
        if j is not None:
            k[j] = b
        return _canonical(k)

    for i in range(n):
        for j in range(i + 1, n):
            if encl[i] is encl[j] or encl[i] == encl[j]:
                return ResonanceVerdict(RESONANT, K, snapshot, unit(i, j))
    rats = [i for i, e in enumerate(encl) if e.is_exact() and e.is_real()]
    for i in rats:
        if encl[i].re == 0 and encl[i].im == 0:
            return ResonanceVerdict(RESONANT, K, snapshot, unit(i))
    if len(rats) >= 2:
        i, j = rats[0], rats[1]
        a, b = encl[i].re, encl[j].re
        den = a.denominator * b.denominator
        return ResonanceVerdict(
            RESONANT, K, snapshot, unit(i, j, int(b * den), -int(a * den))
        )

    survivors = sorted(_box_survivors(encl, K), key=lambda k: (max(map(abs, k)), k))
    unresolved = []
    for k in survivors:
        status, witness = _decide_candidate(k, encl, cp, precision_budget, budget)
        if status == RESONANT:
            return ResonanceVerdict(RESONANT, K, snapshot, witness)
        if status == UNRESOLVED:
            unresolved.append(tuple(k))
    if unresolved:
        return ResonanceVerdict(UNRESOLVED, K, snapshot, candidates=unresolved)
    return ResonanceVerdict(NONRESONANT, K, snapshot)
