"""Twisted vector fields on projective space through homogeneous representatives.

A field on ``P^n`` with values in ``O(t)`` is stored as ``sum F_i d/dX_i`` on
``A^{n+1}`` with every ``F_i`` homogeneous of degree ``t + 1``.  Two
representatives define the same twisted field when they differ by a
multiple ``f * E`` of the Euler field.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence, Tuple

from .polyring import Poly, exact_divide, parse_poly
from .vectorfield import VectorField, affine_degree


def projective_names(n: int) -> Tuple[str, ...]:
    return tuple(f"X{i}" for i in range(n + 1))


@dataclass(frozen=True)
class HomogeneousField:
    vars: Tuple[str, ...]
    components: Tuple[Poly, ...]
    twist: int

    def __init__(self, vars: Sequence[str], components: Sequence, twist: int):
        vars = tuple(vars)
        if len(vars) < 2:
            raise ValueError("projective space needs at least two homogeneous coordinates")
        if len(components) != len(vars):
            raise ValueError(f"{len(vars)} coordinates but {len(components)} components")
        comps = []
        for c in components:
            if isinstance(c, str):
                c = parse_poly(c, vars)
            elif isinstance(c, Poly):
                c = c.embed(vars)
            else:
                c = Poly.constant(vars, c)
            if not c.is_zero() and not (c.is_homogeneous() and c.degree() == twist + 1):
                raise ValueError(f"component {c} is not homogeneous of degree {twist + 1}")
            comps.append(c)
        if twist + 1 < 0:
            raise ValueError("twist degree must be at least -1")
        object.__setattr__(self, "vars", vars)
        object.__setattr__(self, "components", tuple(comps))
        object.__setattr__(self, "twist", int(twist))

    @property
    def n(self) -> int:
        return len(self.vars) - 1

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def __add__(self, other: "HomogeneousField") -> "HomogeneousField":
        twist = self._same(other)
        return HomogeneousField(
            self.vars, [a + b for a, b in zip(self.components, other.components)], twist
        )

    def __sub__(self, other: "HomogeneousField") -> "HomogeneousField":
        twist = self._same(other)
        return HomogeneousField(
            self.vars, [a - b for a, b in zip(self.components, other.components)], twist
        )

    def scale(self, f: Poly) -> "HomogeneousField":
        """``f * h`` for a homogeneous polynomial ``f`` (raises the twist by deg f)."""
        f = f.embed(self.vars) if isinstance(f, Poly) else Poly.constant(self.vars, f)
        if f.is_zero():
            return HomogeneousField(self.vars, [Poly.zero(self.vars)] * len(self.vars), self.twist)
        if not f.is_homogeneous():
            raise ValueError(f"multiplier {f} is not homogeneous")
        return HomogeneousField(self.vars, [f * c for c in self.components], self.twist + f.degree())

    def _same(self, other) -> int:
        """The common twist; the zero field is compatible with every twist."""
        if self.vars != other.vars:
            raise ValueError("fields live on different projective spaces")
        if self.twist == other.twist or other.is_zero():
            return self.twist
        if self.is_zero():
            return other.twist
        raise ValueError(f"twists {self.twist} and {other.twist} differ")

    def as_vector_field(self) -> VectorField:
        return VectorField(self.vars, list(self.components))

    def to_json(self) -> dict:
        return {
            "vars": list(self.vars),
            "components": [str(c) for c in self.components],
            "twist_degree": self.twist,
        }

    @classmethod
    def from_json(cls, data) -> "HomogeneousField":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["vars"], data["components"], int(data["twist_degree"]))

    def __str__(self):
        parts = [f"({c})*d/d{v}" for v, c in zip(self.vars, self.components) if c]
        return (" + ".join(parts) if parts else "0") + f"  [twist {self.twist}]"


def euler_field(n: int, vars: Sequence[str] | None = None) -> HomogeneousField:
    """``E = sum X_i d/dX_i`` on ``A^{n+1}``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    vars = tuple(vars) if vars is not None else projective_names(n)
    if len(vars) != n + 1:
        raise ValueError(f"need {n + 1} coordinate names")
    return HomogeneousField(vars, list(Poly.gens(vars)), 0)


def homogenize_affine(v: VectorField, d: int, vars: Sequence[str] | None = None) -> HomogeneousField:
    """``F_0 = 0`` and ``F_i = X_0^d f_i(X_1/X_0, ..., X_n/X_0)``; twist ``d - 1``."""
    deg = affine_degree(v)
    if deg > d:
        raise ValueError(f"affine degree {deg} exceeds d = {d}")
    vars = tuple(vars) if vars is not None else projective_names(v.n)
    if len(vars) != v.n + 1:
        raise ValueError(f"need {v.n + 1} coordinate names")
    comps = [Poly.zero(vars)]
    for f in v.polys():
        terms = {(d - sum(m),) + m: c for m, c in f.terms.items()}
        comps.append(Poly(vars, terms))
    return HomogeneousField(vars, comps, d - 1)


def dehomogenize(h: HomogeneousField, vars: Sequence[str] | None = None) -> VectorField:
    """Set ``X_0 = 1`` in ``F_1..F_n``; requires the representative with ``F_0 = 0``."""
    if not h.components[0].is_zero():
        raise ValueError(
            "F0 is nonzero; subtract (F0/X0)*E first (possible only when X0 divides F0)"
        )
    vars = tuple(vars) if vars is not None else _affine_names(h.n)
    return chart_derivation(h, 0, vars)


def _affine_names(n: int) -> Tuple[str, ...]:
    if n <= 3:
        return ("x", "y", "z")[:n]
    return tuple(f"x{i}" for i in range(1, n + 1))


def chart_derivation(h: HomogeneousField, chart: int, vars: Sequence[str] | None = None) -> VectorField:
    """The field on ``X_i != 0`` in coordinates ``u_j = X_j / X_i`` (j != i).

    Component ``u_j`` is ``F_j(u) - u_j * F_i(u)`` with ``u_i = 1``: the
    quotient ``F_j/X_i - X_j F_i/X_i^2`` trivialised by ``X_i^t``.
    """
    if not 0 <= chart <= h.n:
        raise ValueError(f"chart index {chart} out of range 0..{h.n}")
    others = [j for j in range(h.n + 1) if j != chart]
    if vars is None:
        vars = _affine_names(h.n) if chart == 0 else tuple(f"u{j}" for j in others)
    vars = tuple(vars)
    if len(vars) != h.n:
        raise ValueError(f"need {h.n} chart coordinate names")

    def restrict(F: Poly) -> Poly:
        terms = {}
        for m, c in F.terms.items():
            key = tuple(m[j] for j in others)
            terms[key] = terms.get(key, 0) + c
        return Poly(vars, terms)

    Fi = restrict(h.components[chart])
    U = Poly.gens(vars)
    comps = [restrict(h.components[j]) - U[k] * Fi for k, j in enumerate(others)]
    return VectorField(vars, comps)


def hyperplane_invariant(h: HomogeneousField) -> bool:
    """``X_0 = 0`` is invariant iff ``X_0`` divides ``F_0``."""
    return h.components[0].valuation(h.vars[0]) >= 1


def modulo_euler_equal(h1: HomogeneousField, h2: HomogeneousField) -> bool:
    """Whether ``h1 - h2 = f * E`` for a homogeneous ``f`` of degree ``t``."""
    h1._same(h2)
    diff = (h1 - h2).components
    X = Poly.gens(h1.vars)
    # the quotient must be the same f for every coordinate
    pivot = next((j for j in range(len(X)) if diff[j]), None)
    if pivot is None:
        return True
    f = exact_divide(diff[pivot], X[pivot])
    if f is None:
        return False
    return all(diff[j] == f * X[j] for j in range(len(X)))


def pole_order(v: VectorField, hyperplane: str) -> int:
    """``max(0, -min_i val(a_i))`` for the ``hyperplane``-adic valuation of the components."""
    if hyperplane not in v.vars:
        raise KeyError(f"unknown variable {hyperplane!r}")
    vals = [c.valuation(hyperplane) for c in v.components if not c.is_zero()]
    if not vals:
        return 0
    return max(0, -min(vals))
