"""First prolongation to the cotangent bundle and horizontal invariant cones.

Projective objects over ``P(T*X)`` are represented by their affine cones: ideals
in the base variables ``x_1..x_n`` plus fiber coordinates ``y_1..y_n`` that are
homogeneous in the fiber block.  The prolonged field preserves fiber degree, so
invariance of the cone and of its projectivisation agree.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from .groebner import DEFAULT_BUDGET, Ideal, buchberger, normal_form
from .linalg import QMatrix, nullspace, rref
from .polyring import Poly, exact_divide, parse_poly
from .vectorfield import VectorField, apply_derivation, clear_denominators


def fiber_names(base: Sequence[str], prefix: str = "y") -> Tuple[str, ...]:
    """``y1..yn``, falling back to ``p1..pn`` (and further suffixes) on a clash."""
    for pre in (prefix, "p", "eta", "fib"):
        names = tuple(f"{pre}{i}" for i in range(1, len(base) + 1))
        if not set(names) & set(base):
            return names
    raise ValueError(f"cannot choose fiber variable names for {base}")


@dataclass(frozen=True)
class ProlongedField:
    base: VectorField
    full: VectorField

    @property
    def fiber_vars(self) -> Tuple[str, ...]:
        return self.full.vars[self.base.n:]

    @property
    def ambient(self) -> Tuple[str, ...]:
        return self.full.vars


@dataclass(frozen=True)
class HorizontalIdeal:
    """y-homogeneous ideal on (x, y): the cone over a subvariety of ``P(T*X)``."""

    ideal: Ideal
    base_vars: Tuple[str, ...]
    fiber_vars: Tuple[str, ...]

    def __post_init__(self):
        n = len(self.base_vars)
        block = range(n, 2 * n)
        for g in self.ideal.generators:
            if not g.is_homogeneous(block):
                raise ValueError(f"generator {g} is not homogeneous in the fiber variables")

    @property
    def homogeneous(self) -> bool:
        return True

    def to_json(self) -> dict:
        return {
            "vars": list(self.base_vars),
            "fiber_vars": list(self.fiber_vars),
            "generators": [str(g) for g in self.ideal.generators],
        }

    @classmethod
    def from_json(cls, data) -> "HorizontalIdeal":
        if isinstance(data, str):
            data = json.loads(data)
        base, fib = tuple(data["vars"]), tuple(data["fiber_vars"])
        amb = base + fib
        gens = [parse_poly(s, amb) for s in data["generators"]]
        return cls(Ideal(amb, gens), base, fib)


def first_prolongation(v: VectorField, fiber: Sequence[str] | None = None) -> ProlongedField:
    """``v^[1] = sum a_i d/dx_i - sum_i (sum_j d a_j/d x_i * y_j) d/dy_i``."""
    a = v.polys()
    ys = tuple(fiber) if fiber is not None else fiber_names(v.vars)
    amb = v.vars + ys
    Y = Poly.gens(amb)[v.n:]
    comps: List[Poly] = [ai.embed(amb) for ai in a]
    for xi in v.vars:
        s = Poly.zero(amb)
        for aj, yj in zip(a, Y):
            d = aj.diff(xi)
            if d:
                s = s + d.embed(amb) * yj
        comps.append(-s)
    return ProlongedField(v, VectorField(amb, comps))


def tautological_form(w: VectorField, fiber: Sequence[str] | None = None) -> Poly:
    """``w_bar = sum_i w_i * y_i`` on the cotangent coordinates."""
    ys = tuple(fiber) if fiber is not None else fiber_names(w.vars)
    amb = w.vars + ys
    out = Poly.zero(amb)
    for wi, yi in zip(w.polys(), Poly.gens(amb)[w.n:]):
        if wi:
            out = out + wi.embed(amb) * yi
    return out


def canonical_hypersurface(v: VectorField) -> HorizontalIdeal:
    """The principal cone ``<v_bar>`` over the canonical invariant hypersurface."""
    if v.is_zero():
        raise ValueError("the zero field has no canonical hypersurface")
    ys = fiber_names(v.vars)
    vbar = tautological_form(v, ys)
    return HorizontalIdeal(Ideal(v.vars + ys, [vbar]), v.vars, ys)


def check_horizontal_invariant(
    pv: ProlongedField, h: HorizontalIdeal, budget: int = DEFAULT_BUDGET
) -> bool:
    """Whether ``v^[1](g)`` reduces to zero modulo ``h`` for every generator ``g``.

    Budget exhaustion propagates as :class:`GroebnerBudgetExceeded`, never as False.
    """
    if h.ideal.ambient != pv.ambient:
        raise ValueError(f"ideal ambient {h.ideal.ambient} differs from {pv.ambient}")
    gb = buchberger(h.ideal, budget=budget)
    return all(normal_form(apply_derivation(pv.full, g), gb).is_zero() for g in h.ideal.generators)


class DependentSpanningSet(ValueError):
    def __init__(self, point, relation):
        super().__init__(f"spanning fields are dependent at {point}: relation {relation}")
        self.point = point
        self.relation = relation


def distribution_conormal_ideal(
    spanning: Sequence[VectorField], rng: random.Random | None = None, retries: int = 3
) -> HorizontalIdeal:
    """Cone ``<xi_1_bar, ..., xi_r_bar>`` for the distribution spanned by the fields.

    Rational fields are first multiplied by their common denominator, which
    leaves the distribution unchanged off the polar locus.  Independence is
    probed at random integer points (``retries`` attempts); a persistent
    dependency is rejected with the last witness relation.
    """
    if not spanning:
        raise ValueError("empty spanning set")
    vars = spanning[0].vars
    for s in spanning:
        spanning[0]._same(s)
    rng = rng or random.Random(0)
    spanning = [clear_denominators(s) for s in spanning]
    polys = [s.polys() for s in spanning]
    witness = None
    for _ in range(retries):
        pt = [rng.randint(-97, 97) for _ in vars]
        try:
            rows = [[c.evaluate(pt) for c in p] for p in polys]
        except ZeroDivisionError:
            continue
        # dependency = nonzero left kernel of the r x n matrix
        m = QMatrix.from_rows([list(col) for col in zip(*rows)])
        _, pivots = rref(m)
        if len(pivots) == len(spanning):
            break
        witness = (pt, nullspace(m)[0])
    else:
        raise DependentSpanningSet(*witness)
    ys = fiber_names(vars)
    gens = [tautological_form(s, ys) for s in spanning]
    return HorizontalIdeal(Ideal(vars + ys, gens), vars, ys)


def bott_restriction_check(v: VectorField, f: Poly) -> bool:
    """Every fiber component of ``(f v)^[1] - f * v^[1]`` is divisible by ``v_bar``.

    This is the coordinate form of O_X-linearity of the lift induced by Bott's
    partial connection on the conormal sheaf of the foliation of ``v``.
    """
    if v.is_zero():
        raise ValueError("bott_restriction_check needs a nonzero field")
    ys = fiber_names(v.vars)
    amb = v.vars + ys
    fv = v.scale(f)
    p_fv = first_prolongation(fv, ys).full
    p_v = first_prolongation(v, ys).full
    F = f.embed(amb)
    vbar = tautological_form(v, ys)
    for i in range(v.n, 2 * v.n):
        diff = p_fv.components[i].as_poly() - F * p_v.components[i].as_poly()
        if exact_divide(diff, vbar) is None:
            return False
    return True

