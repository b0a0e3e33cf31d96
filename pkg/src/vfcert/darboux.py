"""Darboux polynomials, invariant ideals and codimension-one invariant distributions.

``g`` is a Darboux polynomial of ``v`` with cofactor ``h`` when
``v(g) = h * g``.  The bounded search splits candidates by their grevlex
leading monomial ``m``: ``g = m + sum c_mu * mu`` over monomials ``mu < m``,
``h`` generic of degree ``max(deg v - 1, 0)``.  The coefficients of
``v(g) - h*g`` are bilinear in the unknowns ``(c, e)`` and their rational
solutions are read off a Groebner basis.
"""

from __future__ import annotations

import itertools
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

from .groebner import (
    DEFAULT_BUDGET,
    GroebnerBudgetExceeded,
    Ideal,
    buchberger,
    independent_variables,
    is_zero_dimensional,
    normal_form,
    rational_points,
)
from .polyring import Poly, RatFunc, exact_divide, grevlex_key, parse_poly
from .vectorfield import VectorField, affine_degree, apply_derivation

COMPLETE = "COMPLETE"
BUDGET_EXHAUSTED = "BUDGET_EXHAUSTED"


@dataclass(frozen=True)
class DarbouxPair:
    g: Poly
    h: Poly

    def to_json(self) -> dict:
        return {"g": str(self.g), "h": str(self.h)}


@dataclass(frozen=True)
class Family:
    """A positive-dimensional solution set of one stratum, kept symbolically.

    ``template`` is ``g`` with the unknown coefficients as parameters,
    ``cofactor`` the matching ``h``; ``ideal`` constrains the parameters.
    """

    leading_monomial: Poly
    template: Dict[Tuple[int, ...], Poly]
    cofactor: Dict[Tuple[int, ...], Poly]
    ideal: Ideal
    free: Tuple[str, ...]
    base_vars: Tuple[str, ...]

    def g_at(self, values: Dict[str, object]) -> Poly:
        return _instantiate(self.template, values, self.base_vars)

    def h_at(self, values: Dict[str, object]) -> Poly:
        return _instantiate(self.cofactor, values, self.base_vars)

    def to_json(self) -> dict:
        return {
            "leading_monomial": str(self.leading_monomial),
            "g": _template_str(self.template, self.base_vars),
            "h": _template_str(self.cofactor, self.base_vars),
            "constraints": [str(p) for p in self.ideal.generators],
            "free_parameters": list(self.free),
        }


@dataclass
class SearchReport:
    D: int
    status: str
    found: List[DarbouxPair] = field(default_factory=list)
    families: List[Family] = field(default_factory=list)
    irrational_branches: int = 0
    exhausted_strata: List[str] = field(default_factory=list)

    def to_json(self) -> dict:
        out = {
            "D": self.D,
            "status": self.status,
            "found": [p.to_json() for p in self.found],
            "families": [f.to_json() for f in self.families],
            "irrational_branches": self.irrational_branches,
        }
        if self.exhausted_strata:
            out["exhausted_strata"] = list(self.exhausted_strata)
        return out


# -- single polynomials ------------------------------------------------------

def cofactor_of(v: VectorField, g: Poly) -> Poly | None:
    """``h`` with ``v(g) = h*g``, or None when ``g`` is not a Darboux polynomial."""
    if g.is_constant():
        raise ValueError("cofactor_of needs a nonconstant polynomial")
    g = g.embed(v.vars)
    return exact_divide(apply_derivation(v, g), g)


def invariant_ideal_check(v: VectorField, ideal: Ideal, budget: int = DEFAULT_BUDGET) -> bool:
    """Whether ``v(g)`` lies in the ideal for every generator ``g``."""
    if ideal.ambient != v.vars:
        raise ValueError(f"ideal ambient {ideal.ambient} differs from {v.vars}")
    gb = buchberger(ideal, budget=budget)
    return all(normal_form(apply_derivation(v, g), gb).is_zero() for g in ideal.generators)


# -- bounded search ----------------------------------------------------------

def _monomials(n: int, max_deg: int) -> List[Tuple[int, ...]]:
    out = []
    for d in range(max_deg + 1):
        for c in itertools.combinations_with_replacement(range(n), d):
            m = [0] * n
            for i in c:
                m[i] += 1
            out.append(tuple(m))
    return out


def _instantiate(template, values, base_vars) -> Poly:
    terms = {}
    for m, coeff in template.items():
        c = coeff
        for name, val in values.items():
            if name in c.ambient:
                c = c.subs({name: val})
        if not c.is_constant():
            raise ValueError("parameters left unassigned")
        terms[m] = c.constant_term()
    return Poly(base_vars, terms)


def _template_str(template, base_vars) -> str:
    parts = []
    for m in sorted(template, key=grevlex_key, reverse=True):
        mono = "*".join(v if e == 1 else f"{v}^{e}" for v, e in zip(base_vars, m) if e) or "1"
        c = template[m]
        parts.append(mono if c == Poly.constant(c.ambient, 1) else f"({c})*{mono}")
    return " + ".join(parts) if parts else "0"


def _stratum_system(polys, n, m, hdeg):
    """Unknown ring, g and h templates, and the coefficient equations for leading monomial ``m``."""
    lower = [mu for mu in _monomials(n, sum(m)) if grevlex_key(mu) < grevlex_key(m)]
    hmons = _monomials(n, hdeg)
    cn = [f"c{i}" for i in range(len(lower))]
    en = [f"e{i}" for i in range(len(hmons))]
    U = tuple(cn + en)
    one = Poly.constant(U, 1)
    g = {m: one}
    for name, mu in zip(cn, lower):
        g[mu] = Poly.var(U, name)
    h = {nu: Poly.var(U, name) for name, nu in zip(en, hmons)}
    eqs: Dict[Tuple[int, ...], Poly] = {}

    def add(mono, p):
        if mono in eqs:
            eqs[mono] = eqs[mono] + p
        else:
            eqs[mono] = p

    # v(g) = sum_i a_i * d g / d x_i
    for i, a in enumerate(polys):
        for mu, coeff in g.items():
            if not mu[i]:
                continue
            dmu = mu[:i] + (mu[i] - 1,) + mu[i + 1:]
            for am, ac in a.terms.items():
                add(tuple(x + y for x, y in zip(am, dmu)), coeff * (ac * mu[i]))
    for nu, hc in h.items():
        for mu, gc in g.items():
            add(tuple(x + y for x, y in zip(nu, mu)), -(hc * gc))
    return U, g, h, [p for p in eqs.values() if not p.is_zero()]


def _solve_stratum(args):
    polys, vars, n, m, hdeg, budget = args
    U, gt, ht, eqs = _stratum_system(polys, n, m, hdeg)
    out = {"pairs": [], "family": None, "irrational": 0, "exhausted": False}
    try:
        gb = buchberger(Ideal(U, eqs), budget=budget)
        if gb.is_unit():
            return out
        if is_zero_dimensional(gb):
            sols = rational_points(Ideal(U, gb.basis), budget=budget)
            out["irrational"] = sols.irrational_branches
            for pt in sols.points:
                out["pairs"].append(
                    (_instantiate(gt, pt, vars), _instantiate(ht, pt, vars))
                )
            return out
        free = independent_variables(gb)
        out["family"] = (gt, ht, gb.basis, free, U)
        # one representative with the free parameters set to zero
        zero = [Poly.var(U, f) for f in free]
        sols = rational_points(Ideal(U, list(gb.basis) + zero), budget=budget)
        out["irrational"] = sols.irrational_branches
        for pt in sols.points:
            out["pairs"].append((_instantiate(gt, pt, vars), _instantiate(ht, pt, vars)))
    except GroebnerBudgetExceeded:
        out["exhausted"] = True
    return out


def darboux_search(
    v: VectorField, D: int, budget: int = DEFAULT_BUDGET, jobs: int = 1
) -> SearchReport:
    """All rational Darboux polynomials of degree ``<= D`` up to scalars, by stratum.

    ``found`` keeps only polynomials with no smaller found divisor; the
    positive-dimensional strata are returned in ``families`` and contribute
    one representative each to ``found``.
    """
    if D < 1:
        raise ValueError("degree bound D must be at least 1")
    polys = v.polys()
    if v.is_zero():
        raise ValueError("darboux_search needs a nonzero field")
    n = v.n
    hdeg = max(int(affine_degree(v)) - 1, 0)
    strata = []
    for d in range(1, D + 1):
        ms = [m for m in _monomials(n, d) if sum(m) == d]
        ms.sort(key=grevlex_key, reverse=True)
        strata.extend(ms)
    tasks = [(polys, v.vars, n, m, hdeg, budget) for m in strata]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_solve_stratum, tasks))
    else:
        results = [_solve_stratum(t) for t in tasks]

    report = SearchReport(D, COMPLETE)
    found: List[DarbouxPair] = []
    for m, res in zip(strata, results):
        report.irrational_branches += res["irrational"]
        if res["exhausted"]:
            report.status = BUDGET_EXHAUSTED
            report.exhausted_strata.append(str(Poly(v.vars, {m: 1})))
        if res["family"] is not None:
            gt, ht, basis, free, U = res["family"]
            report.families.append(
                Family(Poly(v.vars, {m: 1}), gt, ht, Ideal(U, basis), free, v.vars)
            )
        for g, h in res["pairs"]:
            if any(p.g.degree() < g.degree() and exact_divide(g, p.g) is not None for p in found):
                continue
            found.append(DarbouxPair(g, h))
    report.found = found
    return report


# -- one-forms and codimension-one distributions -----------------------------

@dataclass(frozen=True)
class OneForm:
    vars: Tuple[str, ...]
    components: Tuple[Poly, ...]

    def __init__(self, vars: Sequence[str], components: Sequence):
        vars = tuple(vars)
        if len(components) != len(vars):
            raise ValueError(f"{len(vars)} variables but {len(components)} components")
        comps = []
        for c in components:
            if isinstance(c, str):
                c = parse_poly(c, vars)
            elif isinstance(c, Poly):
                c = c.embed(vars)
            else:
                c = Poly.constant(vars, c)
            comps.append(c)
        if all(c.is_zero() for c in comps):
            raise ValueError("the zero one-form does not define a distribution")
        object.__setattr__(self, "vars", vars)
        object.__setattr__(self, "components", tuple(comps))

    def to_json(self) -> dict:
        return {"vars": list(self.vars), "components": [str(c) for c in self.components]}

    @classmethod
    def from_json(cls, data) -> "OneForm":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["vars"], data["components"])

    def __str__(self):
        parts = [f"({c})*d{v}" for v, c in zip(self.vars, self.components) if c]
        return " + ".join(parts)


def dual_derivative(v: VectorField, w: OneForm) -> Tuple[Poly, ...]:
    """``(nabla_v w)_j = v(w_j) + sum_i d a_i / d x_j * w_i``."""
    if w.vars != v.vars:
        raise ValueError(f"one-form variables {w.vars} differ from {v.vars}")
    a = v.polys()
    out = []
    for j, x in enumerate(v.vars):
        s = apply_derivation(v, w.components[j])
        for ai, wi in zip(a, w.components):
            if wi:
                d = ai.diff(x)
                if d:
                    s = s + d * wi
        out.append(s)
    return tuple(out)


def codim1_invariant(v: VectorField, w: OneForm) -> Poly | RatFunc | None:
    """Cofactor ``h`` with ``nabla_v w = h * w``, or None when the kernel is not invariant.

    ``h`` is a Poly when polynomial, otherwise a reduced RatFunc.
    """
    nab = dual_derivative(v, w)
    comps = w.components
    j = next(i for i, c in enumerate(comps) if c)
    for i in range(len(comps)):
        if nab[i] * comps[j] != nab[j] * comps[i]:
            return None
    h = exact_divide(nab[j], comps[j])
    if h is not None:
        return h
    return RatFunc(nab[j], comps[j])


def contraction(v: VectorField, w: OneForm) -> Poly:
    """``i_v(w) = sum_i a_i * w_i``."""
    out = Poly.zero(v.vars)
    for a, c in zip(v.polys(), w.components):
        out = out + a * c
    return out


def tangency_identity_check(v: VectorField, w: OneForm) -> bool:
    """With ``h`` the cofactor of ``w``, check ``v(g) = h*g`` for ``g = i_v(w)``.

    Raises ValueError when ``w`` does not define an invariant distribution.
    """
    h = codim1_invariant(v, w)
    if h is None:
        raise ValueError("the one-form does not define a v-invariant distribution")
    g = contraction(v, w)
    lhs = apply_derivation(v, g)
    if isinstance(h, Poly):
        return lhs == h * g
    return RatFunc.coerce(lhs) == h * g
