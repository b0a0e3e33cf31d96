"""Buchberger's algorithm, normal forms, elimination and rational solutions.

Polynomials are handled internally as plain ``{exponent tuple: mpq}`` dicts;
the public functions take and return :class:`~vfcert.polyring.Poly`.
S-pairs are pruned with the Gebauer-Moeller installation of both Buchberger
criteria and selected by ``(lcm, creation index)`` (normal strategy) or
``(sugar, creation index)`` so that results are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

from gmpy2 import mpq

from .polyring import Poly, grevlex_key, lex_key

DEFAULT_BUDGET = 10**6


class GroebnerBudgetExceeded(RuntimeError):
    """Raised when a basis computation exceeds its reduction-step budget."""


@dataclass(frozen=True)
class MonomialOrder:
    kind: str = "grevlex"  # "grevlex" | "lex" | "block"
    split: int = 0

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex", "block"):
            raise ValueError(f"unknown monomial order {self.kind!r}")

    def key(self, m):
        if self.kind == "grevlex":
            return grevlex_key(m)
        if self.kind == "lex":
            return lex_key(m)
        k = self.split
        return (grevlex_key(m[:k]), grevlex_key(m[k:]))

    def __str__(self):
        return f"block({self.split})" if self.kind == "block" else self.kind


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def block_order(split: int) -> MonomialOrder:
    return MonomialOrder("block", split)


@dataclass(frozen=True)
class Ideal:
    ambient: Tuple[str, ...]
    generators: Tuple[Poly, ...]

    def __init__(self, ambient: Sequence[str], generators: Sequence[Poly] = ()):
        ambient = tuple(ambient)
        gens = []
        for g in generators:
            if g.ambient != ambient:
                g = g.embed(ambient)
            if not g.is_zero():
                gens.append(g)
        object.__setattr__(self, "ambient", ambient)
        object.__setattr__(self, "generators", tuple(gens))

    def is_zero_ideal(self) -> bool:
        return not self.generators

    def __str__(self):
        return "<" + ", ".join(str(g) for g in self.generators) + ">"


@dataclass
class GroebnerBasis:
    ideal: Ideal
    order: MonomialOrder
    basis: List[Poly]
    steps: int = 0

    def normal_form(self, p: Poly) -> Poly:
        return normal_form(p, self)

    def contains(self, p: Poly) -> bool:
        return normal_form(p, self).is_zero()

    def is_unit(self) -> bool:
        return len(self.basis) == 1 and self.basis[0].is_constant()

    def leading_monomials(self):
        return [g.leading_monomial(self.order.key) for g in self.basis]


# -- internal dict arithmetic ------------------------------------------------

def _divides(a, b) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def _disjoint(a, b) -> bool:
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


class _Reducer:
    def __init__(self, key, budget: int):
        self.key = key
        self.keys: Dict[tuple, tuple] = {}
        self.budget = budget
        self.steps = 0

    def k(self, m):
        v = self.keys.get(m)
        if v is None:
            v = self.keys[m] = self.key(m)
        return v

    def lm(self, p):
        return max(p, key=self.k)

    def monic(self, p):
        c = p[self.lm(p)]
        if c == 1:
            return p
        inv = 1 / c
        return {m: v * inv for m, v in p.items()}

    def reduce(self, p, basis, top_only=False):
        """Fully reduce dict ``p`` by ``basis`` (list of (lm, monic dict))."""
        p = dict(p)
        r = {}
        k = self.k
        while p:
            m = max(p, key=k)
            c = p[m]
            for lm, g in basis:
                if _divides(lm, m):
                    self.steps += 1
                    if self.steps > self.budget:
                        raise GroebnerBudgetExceeded(
                            f"Groebner computation exceeded {self.budget} reduction steps"
                        )
                    shift = tuple(x - y for x, y in zip(m, lm))
                    for mg, cg in g.items():
                        t = tuple(x + y for x, y in zip(mg, shift))
                        s = p.get(t)
                        s = -c * cg if s is None else s - c * cg
                        if s:
                            p[t] = s
                        else:
                            p.pop(t, None)
                    break
            else:
                if top_only:
                    r.update(p)
                    return r
                r[m] = p.pop(m)
        return r


def _spoly(f, lf, g, lg):
    L = _lcm(lf, lg)
    sf = tuple(x - y for x, y in zip(L, lf))
    sg = tuple(x - y for x, y in zip(L, lg))
    out = {}
    for m, c in f.items():
        out[tuple(x + y for x, y in zip(m, sf))] = c
    for m, c in g.items():
        t = tuple(x + y for x, y in zip(m, sg))
        s = out.get(t)
        s = -c if s is None else s - c
        if s:
            out[t] = s
        else:
            out.pop(t, None)
    return out


def _buchberger_dicts(polys, nvars, order: MonomialOrder, budget: int, normal=False):
    red = _Reducer(order.key, budget)
    basis: List[tuple] = []  # (lm, monic dict, sugar)
    active: List[int] = []
    pairs: List[tuple] = []  # (sugar, counter, i, j, lcm)
    counter = 0

    def update(h_idx):
        nonlocal pairs, active, counter
        lh = basis[h_idx][0]
        C = [(g, _lcm(lh, basis[g][0])) for g in active]
        keep = []
        while C:
            g1, L1 = C.pop(0)
            if _disjoint(lh, basis[g1][0]) or not (
                any(_divides(L2, L1) for _, L2 in C) or any(_divides(L2, L1) for _, L2 in keep)
            ):
                keep.append((g1, L1))
        new_pairs = [(g, L) for g, L in keep if not _disjoint(lh, basis[g][0])]
        survivors = []
        for pr in pairs:
            _, _, i, j, L = pr
            if (
                _divides(lh, L)
                and _lcm(basis[i][0], lh) != L
                and _lcm(basis[j][0], lh) != L
            ):
                continue
            survivors.append(pr)
        sh = basis[h_idx][2]
        for g, L in new_pairs:
            lg, _, sg = basis[g]
            sugar = max(sh + sum(L) - sum(lh), sg + sum(L) - sum(lg))
            survivors.append((sugar, counter, g, h_idx, L))
            counter += 1
        pairs = survivors
        active = [g for g in active if not _divides(lh, basis[g][0])] + [h_idx]

    def current():
        return [(basis[g][0], basis[g][1]) for g in active]

    # seed with generators sorted by leading monomial, smallest first
    seeds = []
    for p in polys:
        if p:
            seeds.append(p)
    seeds.sort(key=lambda p: (sum(red.lm(p)), red.k(red.lm(p))))
    for p in seeds:
        deg = max(sum(m) for m in p)
        r = red.reduce(p, current())
        if not r:
            continue
        r = red.monic(r)
        basis.append((red.lm(r), r, deg))
        update(len(basis) - 1)
        if not any(r_m for r_m in basis[-1][0]):
            break

    while pairs:
        pairs.sort(key=lambda pr: (red.k(pr[4]), pr[1]) if normal else (pr[0], pr[1]))
        sugar, _, i, j, _ = pairs.pop(0)
        s = _spoly(basis[i][1], basis[i][0], basis[j][1], basis[j][0])
        if not s:
            continue
        r = red.reduce(s, current())
        if not r:
            continue
        r = red.monic(r)
        basis.append((red.lm(r), r, sugar))
        update(len(basis) - 1)
        if not any(basis[-1][0]):
            break

    G = [basis[g] for g in active]
    if any(not any(lm) for lm, _, _ in G):
        one = (0,) * nvars
        return [{one: mpq(1)}], red.steps
    # minimal basis then interreduce
    G.sort(key=lambda t: red.k(t[0]))
    minimal = []
    for lm, g, _ in G:
        if not any(_divides(l2, lm) for l2, _ in minimal):
            minimal.append((lm, g))
    reduced = []
    for idx, (lm, g) in enumerate(minimal):
        others = [t for jdx, t in enumerate(minimal) if jdx != idx]
        r = red.monic(red.reduce(g, others))
        reduced.append(r)
    reduced.sort(key=lambda p: red.k(red.lm(p)), reverse=True)
    return reduced, red.steps


def buchberger(
    ideal: Ideal,
    order: MonomialOrder = GREVLEX,
    budget: int = DEFAULT_BUDGET,
    strategy: str = "auto",
) -> GroebnerBasis:
    """Reduced Groebner basis of ``ideal``; raises :class:`GroebnerBudgetExceeded`.

    ``strategy`` is ``"normal"`` (smallest lcm first), ``"sugar"`` or
    ``"auto"``, which currently means normal: on the bilinear coefficient
    systems of the Darboux search the sugar strategy is orders of magnitude
    slower, and it stalls on small lex examples.
    """
    if strategy not in ("auto", "sugar", "normal"):
        raise ValueError(f"unknown pair selection strategy {strategy!r}")
    normal = strategy != "sugar"
    amb = ideal.ambient
    dicts, steps = _buchberger_dicts(
        [g.terms for g in ideal.generators], len(amb), order, budget, normal=normal
    )
    basis = [Poly._raw(amb, d) for d in dicts]
    return GroebnerBasis(ideal, order, basis, steps)


def normal_form(p: Poly, gb: GroebnerBasis) -> Poly:
    if p.ambient != gb.ideal.ambient:
        raise ValueError(f"ambient mismatch: {p.ambient} vs {gb.ideal.ambient}")
    red = _Reducer(gb.order.key, float("inf"))
    basis = [(g.leading_monomial(gb.order.key), g.terms) for g in gb.basis]
    return Poly._raw(p.ambient, red.reduce(p.terms, basis))


def is_zero_dimensional(gb: GroebnerBasis) -> bool:
    """Finitely many standard monomials: a pure power of every variable leads some element."""
    lms = gb.leading_monomials()
    if any(not any(m) for m in lms):
        return True
    n = len(gb.ideal.ambient)
    for i in range(n):
        if not any(m[i] > 0 and all(e == 0 for j, e in enumerate(m) if j != i) for m in lms):
            return False
    return True


def eliminate(ideal: Ideal, keep: Sequence[str], budget: int = DEFAULT_BUDGET) -> Ideal:
    """Generators of ``ideal`` intersected with Q[keep] (block order, eliminated block first)."""
    keep = tuple(keep)
    missing = [v for v in keep if v not in ideal.ambient]
    if missing:
        raise KeyError(f"variables {missing} not in ambient {ideal.ambient}")
    drop = tuple(v for v in ideal.ambient if v not in keep)
    amb = drop + keep
    reordered = Ideal(amb, [g.embed(amb) for g in ideal.generators])
    gb = buchberger(reordered, block_order(len(drop)), budget)
    k = len(drop)
    out = []
    for g in gb.basis:
        if all(not any(m[:k]) for m in g.terms):
            out.append(Poly._raw(keep, {m[k:]: c for m, c in g.terms.items()}))
    return Ideal(keep, out)


def independent_variables(gb: GroebnerBasis) -> Tuple[str, ...]:
    """A maximal set of variables no leading monomial is supported in (greedy, last variables first)."""
    lms = gb.leading_monomials()
    amb = gb.ideal.ambient
    chosen: List[int] = []
    for i in reversed(range(len(amb))):
        trial = set(chosen + [i])
        if not any(all(e == 0 or j in trial for j, e in enumerate(m)) for m in lms):
            chosen.append(i)
    return tuple(amb[i] for i in sorted(chosen))


def _drop_var(p: Poly, var: str, value) -> Poly:
    i = p.ambient.index(var)
    amb = p.ambient[:i] + p.ambient[i + 1:]
    out: Dict[tuple, object] = {}
    for m, c in p.terms.items():
        t = m[:i] + m[i + 1:]
        out[t] = out.get(t, mpq(0)) + c * value ** m[i]
    return Poly(amb, out)


@dataclass
class RationalSolutions:
    points: List[Dict[str, object]] = field(default_factory=list)
    irrational_branches: int = 0
    positive_dimensional: bool = False


def rational_points(ideal: Ideal, budget: int = DEFAULT_BUDGET) -> RationalSolutions:
    """All rational points of a zero-dimensional ideal by lex triangular back-substitution.

    Roots that are not rational are counted in ``irrational_branches``.
    A positive-dimensional ideal sets the flag and returns no points.
    """
    from .linalg import rational_roots, squarefree_part

    out = RationalSolutions()
    amb = ideal.ambient
    if not amb:
        if not ideal.generators:
            out.points.append({})
        return out
    gb = buchberger(ideal, LEX, budget)
    if gb.is_unit():
        return out
    if not is_zero_dimensional(gb):
        out.positive_dimensional = True
        return out
    last = amb[-1]
    univ = [g for g in gb.basis if set(g.support_vars()) <= {last}]
    u = min(univ, key=lambda g: g.degree())
    coeffs = u.coefficients_in(last)
    dense = [coeffs.get(k, Poly.zero(amb)).constant_term() for k in range(u.degree() + 1)]
    sqf = squarefree_part(dense)
    roots = rational_roots(sqf)
    out.irrational_branches += (len(sqf) - 1) - len(roots)
    for r in roots:
        sub = Ideal(amb[:-1], [_drop_var(g, last, r) for g in gb.basis])
        if any(g.is_constant() and not g.is_zero() for g in sub.generators):
            continue
        rest = rational_points(sub, budget)
        out.irrational_branches += rest.irrational_branches
        out.positive_dimensional |= rest.positive_dimensional
        for pt in rest.points:
            full = dict(pt)
            full[last] = r
            out.points.append(full)
    out.points.sort(key=lambda d: [d[v] for v in amb])
    return out
