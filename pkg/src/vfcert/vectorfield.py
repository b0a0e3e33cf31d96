"""Vector fields as derivations of polynomial and rational function rings."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import List, Sequence, Tuple, Union

from .groebner import DEFAULT_BUDGET, Ideal, eliminate
from .polyring import Poly, RatFunc, exact_divide, gcd, parse_expression

Function = Union[Poly, RatFunc]


class VectorField:
    """``v = sum_i a_i d/dx_i`` with one rational-function component per variable."""

    __slots__ = ("vars", "components")

    def __init__(self, vars: Sequence[str], components: Sequence):
        vars = tuple(vars)
        if not vars:
            raise ValueError("a vector field needs at least one variable")
        if len(components) != len(vars):
            raise ValueError(f"{len(vars)} variables but {len(components)} components")
        comps = []
        for c in components:
            if isinstance(c, str):
                c = parse_expression(c, vars)
            elif isinstance(c, Poly):
                c = RatFunc.coerce(c.embed(vars))
            elif isinstance(c, RatFunc):
                c = c if c.ambient == vars else c.embed(vars)
            else:
                c = RatFunc.coerce(c, vars)
            comps.append(c)
        self.vars = vars
        self.components: Tuple[RatFunc, ...] = tuple(comps)

    @classmethod
    def from_json(cls, data) -> "VectorField":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["vars"], data["components"])

    def to_json(self) -> dict:
        return {"vars": list(self.vars), "components": [str(c) for c in self.components]}

    @property
    def n(self) -> int:
        return len(self.vars)

    def is_polynomial(self) -> bool:
        return all(c.is_polynomial() for c in self.components)

    def polys(self) -> Tuple[Poly, ...]:
        """Components as polynomials; raises ValueError for a rational field."""
        if not self.is_polynomial():
            raise ValueError("vector field has rational (non-polynomial) components")
        return tuple(c.as_poly() for c in self.components)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def __eq__(self, other):
        return (
            isinstance(other, VectorField)
            and self.vars == other.vars
            and self.components == other.components
        )

    def __hash__(self):
        return hash((self.vars, self.components))

    def __add__(self, other: "VectorField") -> "VectorField":
        self._same(other)
        return VectorField(self.vars, [a + b for a, b in zip(self.components, other.components)])

    def __sub__(self, other: "VectorField") -> "VectorField":
        self._same(other)
        return VectorField(self.vars, [a - b for a, b in zip(self.components, other.components)])

    def __neg__(self):
        return VectorField(self.vars, [-a for a in self.components])

    def scale(self, f) -> "VectorField":
        """Multiply every component by a function or a constant."""
        if isinstance(f, (Poly, RatFunc)):
            f = RatFunc.coerce(f)
        return VectorField(self.vars, [f * a for a in self.components])

    def __rmul__(self, f):
        return self.scale(f)

    def _same(self, other):
        if self.vars != other.vars:
            raise ValueError(f"vector fields on different variables: {self.vars} vs {other.vars}")

    def __call__(self, f):
        return apply_derivation(self, f)

    def __str__(self):
        parts = []
        for v, c in zip(self.vars, self.components):
            if c.is_zero():
                continue
            parts.append(f"({c})*d/d{v}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"VectorField({list(self.vars)}, {[str(c) for c in self.components]})"


def apply_derivation(v: VectorField, f: Function) -> Function:
    """``sum_i a_i * df/dx_i``.

    Returns a Poly when both ``v`` and ``f`` are polynomial, otherwise a
    reduced RatFunc.
    """
    if isinstance(f, Poly) and v.is_polynomial():
        if f.ambient != v.vars:
            raise ValueError(f"ambient mismatch: {f.ambient} vs {v.vars}")
        out = Poly.zero(v.vars)
        for x, a in zip(v.vars, v.polys()):
            if a:
                d = f.diff(x)
                if d:
                    out = out + a * d
        return out
    f = RatFunc.coerce(f)
    if f.ambient != v.vars:
        raise ValueError(f"ambient mismatch: {f.ambient} vs {v.vars}")
    if f.is_polynomial() and v.is_polynomial():
        return RatFunc.coerce(apply_derivation(v, f.as_poly()))
    # common denominator keeps the number of gcd computations at one
    num = Poly.zero(v.vars)
    den = Poly.constant(v.vars, 1)
    for x, a in zip(v.vars, v.components):
        if a.is_zero():
            continue
        d = f.diff(x)
        if d.is_zero():
            continue
        term_num = a.num * d.num
        term_den = a.den * d.den
        num = num * term_den + term_num * den
        den = den * term_den
    return RatFunc(num, den)


def clear_denominators(v: VectorField) -> VectorField:
    """``L * v`` with ``L`` the lcm of the component denominators (a polynomial field)."""
    L = Poly.constant(v.vars, 1)
    for c in v.components:
        if not c.den.is_constant():
            L = exact_divide(L * c.den, gcd(L, c.den))
    if L.is_constant():
        return v
    return VectorField(v.vars, [exact_divide(c.num * L, c.den) for c in v.components])


def lie_bracket(v: VectorField, w: VectorField) -> VectorField:
    """Component i is ``sum_j (v_j d_j w_i - w_j d_j v_i)``, i.e. ``v(w_i) - w(v_i)``."""
    v._same(w)
    if v.is_polynomial() and w.is_polynomial():
        return VectorField(
            v.vars,
            [apply_derivation(v, wi) - apply_derivation(w, vi) for vi, wi in zip(v.polys(), w.polys())],
        )
    return VectorField(
        v.vars,
        [apply_derivation(v, wi) - apply_derivation(w, vi) for vi, wi in zip(v.components, w.components)],
    )


class AffineDegree(int):
    """An int that also records whether it came from the zero field."""

    zero_field: bool

    def __new__(cls, value: int, zero_field: bool = False):
        obj = super().__new__(cls, value)
        obj.zero_field = zero_field
        return obj


def affine_degree(v: VectorField) -> AffineDegree:
    """Largest total degree of a component; 0 (flagged) for the zero field."""
    polys = v.polys()
    if all(p.is_zero() for p in polys):
        return AffineDegree(0, zero_field=True)
    return AffineDegree(max(p.degree() for p in polys if not p.is_zero()))


@dataclass(frozen=True)
class JetSequence:
    observable: Function
    entries: Tuple[Function, ...]


def jet_sequence(v: VectorField, f: Function, order: int) -> JetSequence:
    """``(f, v(f), v(v(f)), ...)`` up to ``order`` derivations."""
    if order < 1:
        raise ValueError("order must be at least 1")
    entries = [f]
    for _ in range(order):
        entries.append(apply_derivation(v, entries[-1]))
    return JetSequence(f, tuple(entries))


@dataclass(frozen=True)
class OdeResult:
    """Elimination ideal of the jet map image; ``principal`` when a single equation cuts it out."""

    ideal: Ideal
    jet_vars: Tuple[str, ...]
    principal: bool

    @property
    def equation(self) -> Poly | None:
        return self.ideal.generators[0] if self.principal else None


def jet_variable_names(v: VectorField, order: int, prefix: str = "Y") -> Tuple[str, ...]:
    names = tuple(f"{prefix}{k}" for k in range(order + 1))
    if set(names) & set(v.vars):
        raise ValueError(f"jet variable names {names} clash with field variables {v.vars}")
    return names


def extract_ode(
    v: VectorField,
    f: Function,
    order: int | None = None,
    *,
    prefix: str = "Y",
    budget: int = DEFAULT_BUDGET,
) -> OdeResult:
    """Scalar ODE satisfied by the observable ``f`` along ``v``.

    Builds ``<Y_k*den_k - num_k>`` from the jet sequence, saturates by the
    product of the denominators through an auxiliary variable when any is
    nonconstant, and eliminates the field variables.
    """
    if order is None:
        order = v.n
    jets = jet_sequence(v, f, order)
    ynames = jet_variable_names(v, order, prefix)
    entries = [RatFunc.coerce(e) for e in jets.entries]
    dens = [e.den for e in entries if not e.den.is_constant()]
    extra = ("Tsat",) if dens else ()
    while extra and extra[0] in v.vars + ynames:
        extra = (extra[0] + "_",)
    amb = v.vars + ynames + extra
    gens = []
    for y, e in zip(ynames, entries):
        Y = Poly.var(amb, y)
        gens.append(Y * e.den.embed(amb) - e.num.embed(amb))
    if dens:
        prod = Poly.constant(amb, 1)
        for d in dens:
            prod = prod * d.embed(amb)
        gens.append(Poly.var(amb, extra[0]) * prod - 1)
    elim = eliminate(Ideal(amb, gens), ynames, budget=budget)
    return OdeResult(elim, ynames, principal=len(elim.generators) == 1)


def variational_matrix(v: VectorField) -> List[List[RatFunc]]:
    """Matrix ``A`` with ``A[i][j] = d a_j / d x_i`` (linearised system Y' = A Y)."""
    return [[a.diff(x) for a in v.components] for x in v.vars]
