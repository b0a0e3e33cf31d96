"""Bounded-evidence certificates for a rational singular point of a polynomial field.

Two hypotheses are checked, each only up to explicit bounds:

(a) the linear part at the point is non-resonant, tested for integer
    relations of height at most ``K``;
(b) the point lies on no invariant hypersurface, tested against rational
    Darboux polynomials of degree at most ``D``.

A failure of either is a definite, re-checked statement.  Success is reported
as evidence bounded by ``(D, K)``, never as a proof.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

from .darboux import (
    BUDGET_EXHAUSTED,
    SearchReport,
    cofactor_of,
    darboux_search,
    invariant_ideal_check,
)
from .groebner import (
    DEFAULT_BUDGET,
    GroebnerBudgetExceeded,
    Ideal,
    buchberger,
    rational_points,
)
from .polyring import Poly, format_rational
from .singularity import (
    NONRESONANT,
    RESONANT,
    ResonanceVerdict,
    SingularPoint,
    linear_part,
    resonance_check,
    sing_locus_finite,
    singular_ideal,
    verify_singular,
)
from .vectorfield import VectorField, affine_degree

EVIDENCE = "EVIDENCE_FOR_MINIMALITY"
A_FAILS = "HYPOTHESIS_A_FAILS"
B_FAILS = "HYPOTHESIS_B_FAILS"
INCONCLUSIVE = "INCONCLUSIVE"

DISCLAIMER = (
    "This verdict is evidence bounded by (D, K) = ({D}, {K}), not a proof. "
    "Hypothesis (a) was tested only for integer relations of height at most {K}, "
    "so a positive result means non-resonant up to height K = {K}. "
    "Hypothesis (b) was tested only against invariant hypersurfaces cut out by "
    "rational Darboux polynomials of degree at most {D}; invariant curves and "
    "other invariant sets of higher codimension were not searched, so a positive "
    "result means no invariant Q-Darboux hypersurface of degree at most D = {D} "
    "through the point. "
    "An invariant hypersurface defined over the algebraic closure of Q appears here "
    "only through the Galois-orbit product of its equation, which may have larger degree. "
    "Only unbounded versions of both hypotheses would support a minimality "
    "conclusion; no such conclusion is drawn here."
)


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def field_fingerprint(v: VectorField) -> str:
    return hashlib.sha256(canonical_json(v.to_json()).encode()).hexdigest()


@dataclass
class Certificate:
    field: VectorField
    point: SingularPoint
    D: int
    K: int
    resonance: ResonanceVerdict | None
    darboux: SearchReport | None
    point_membership: List[Tuple[Poly, bool]]
    sing_finite: bool | None
    verdict: str
    witness: dict | None = None
    reasons: List[str] = field(default_factory=list)

    @property
    def field_fingerprint(self) -> str:
        return field_fingerprint(self.field)

    def disclaimer(self) -> str:
        return DISCLAIMER.format(D=self.D, K=self.K)

    def verdict_label(self) -> str:
        if self.verdict == EVIDENCE:
            return f"{EVIDENCE}(D={self.D}, K={self.K})"
        if self.verdict == INCONCLUSIVE:
            return f"{INCONCLUSIVE}({'; '.join(self.reasons)})"
        return self.verdict

    def to_json(self) -> dict:
        return {
            "field": self.field.to_json(),
            "field_fingerprint": self.field_fingerprint,
            "point": self.point.to_json(),
            "bounds": {"D": self.D, "K": self.K},
            "resonance": self.resonance.to_json() if self.resonance else None,
            "darboux": self.darboux.to_json() if self.darboux else None,
            "point_membership": [{"g": str(g), "vanishes": b} for g, b in self.point_membership],
            "sing_finite": self.sing_finite,
            "verdict": self.verdict,
            "witness": self.witness,
            "reasons": list(self.reasons),
            "disclaimer": self.disclaimer(),
        }

    def dumps(self) -> str:
        return canonical_json(self.to_json())

    def render(self) -> str:
        lines = [
            f"field        {self.field}",
            f"fingerprint  {self.field_fingerprint}",
            f"point        ({', '.join(self.point.to_json())})",
        ]
        if self.resonance is not None:
            lines.append(f"resonance    {self.resonance}")
        if self.sing_finite is not None:
            lines.append(f"Sing(v)      {'finite' if self.sing_finite else 'not finite'}")
        if self.darboux is not None:
            d = self.darboux
            if d.found:
                lines.append(f"darboux      {d.status}, degree <= {d.D}:")
                for g, b in self.point_membership:
                    lines.append(f"               {g}  ({'vanishes' if b else 'does not vanish'} at the point)")
            else:
                lines.append(f"darboux      {d.status}, no invariant Q-Darboux hypersurface of degree <= {d.D}")
            if d.families:
                lines.append(f"               {len(d.families)} positive-dimensional famil{'y' if len(d.families) == 1 else 'ies'}")
        lines.append(f"verdict      {self.verdict_label()}")
        if self.witness:
            lines.append(f"witness      {canonical_json(self.witness)}")
        lines.append("")
        lines.append(self.disclaimer())
        return "\n".join(lines)


def _family_member_through(family, point, budget):
    """A rational member of ``family`` vanishing at ``point``: (g, h), False if none exists, None if unknown."""
    U = family.ideal.ambient
    at_point = Poly.zero(U)
    for m, c in family.template.items():
        val = c
        for x, e in zip(point, m):
            val = val * (x ** e)
        at_point = at_point + val
    ideal = Ideal(U, list(family.ideal.generators) + [at_point])
    gb = buchberger(ideal, budget=budget)
    if gb.is_unit():
        return False
    extra = []
    for name in U:
        trial = Ideal(U, list(gb.basis) + extra + [Poly.var(U, name)])
        if not buchberger(trial, budget=budget).is_unit():
            extra.append(Poly.var(U, name))
    sols = rational_points(Ideal(U, list(gb.basis) + extra), budget=budget)
    for pt in sols.points:
        g = family.g_at(pt)
        if not g.is_constant():
            return g, family.h_at(pt)
    return None


def certify(
    v: VectorField,
    point: Sequence,
    D: int = 3,
    K: int = 50,
    budget: int = DEFAULT_BUDGET,
    invariant_ideals: Sequence[Ideal] = (),
    jobs: int = 1,
    precision_budget: int = 64,
) -> Certificate:
    """Run the singular-point, resonance, finiteness and Darboux stages and decide a verdict.

    Raises NotSingular when the point is not a zero of the field.
    """
    if v.is_zero():
        raise ValueError("certify needs a nonzero field")
    v.polys()
    p = verify_singular(v, point)
    coords = p.coords
    cert = Certificate(v, p, D, K, None, None, [], None, INCONCLUSIVE)
    reasons = []

    A = linear_part(v, p)
    cert.resonance = resonance_check(A, K, precision_budget, budget)
    if cert.resonance.status not in (RESONANT, NONRESONANT):
        reasons.append(f"resonance unresolved at height {K}")

    try:
        cert.sing_finite = sing_locus_finite(v, budget)
        if not cert.sing_finite:
            reasons.append("Sing(v) is not finite")
    except GroebnerBudgetExceeded:
        reasons.append("budget exhausted while testing finiteness of Sing(v)")

    b_witness = None
    for ideal in invariant_ideals:
        try:
            if (
                all(g.evaluate(coords) == 0 for g in ideal.generators)
                and not buchberger(ideal, budget=budget).is_unit()
                and invariant_ideal_check(v, ideal, budget)
            ):
                b_witness = b_witness or {"invariant_ideal": [str(g) for g in ideal.generators]}
        except GroebnerBudgetExceeded:
            reasons.append("budget exhausted while checking a supplied ideal")

    report = darboux_search(v, D, budget, jobs)
    cert.darboux = report
    if report.status == BUDGET_EXHAUSTED:
        reasons.append("budget exhausted in the Darboux search")
    for pair in report.found:
        vanishes = pair.g.evaluate(coords) == 0
        cert.point_membership.append((pair.g, vanishes))
        # independent re-check before a failure verdict is emitted
        if vanishes and b_witness is None and cofactor_of(v, pair.g) == pair.h:
            b_witness = {"g": str(pair.g), "h": str(pair.h)}
    for fam in report.families:
        if b_witness is not None:
            break
        try:
            member = _family_member_through(fam, coords, budget)
        except GroebnerBudgetExceeded:
            member = None
        if member is False:
            continue
        if member is not None:
            g, h = member
            if g.evaluate(coords) == 0 and cofactor_of(v, g) == h:
                b_witness = {"g": str(g), "h": str(h)}
                continue
        reasons.append(f"family with leading monomial {fam.leading_monomial} not decided at the point")

    if cert.resonance.status == RESONANT:
        cert.verdict = A_FAILS
        cert.witness = {"resonance": list(cert.resonance.witness)}
    elif b_witness is not None:
        cert.verdict = B_FAILS
        cert.witness = b_witness
    elif reasons:
        cert.verdict = INCONCLUSIVE
        cert.reasons = reasons
    else:
        cert.verdict = EVIDENCE
    return cert


@dataclass
class StructureReport:
    n: int
    degree: int
    sing_finite: bool
    rational_singular_points: List[Tuple] | None
    irrational_singular_branches: int
    notes: List[str]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "affine_degree": self.degree,
            "sing_finite": self.sing_finite,
            "rational_singular_points": None
            if self.rational_singular_points is None
            else [[format_rational(c) for c in p] for p in self.rational_singular_points],
            "irrational_singular_branches": self.irrational_singular_branches,
            "notes": list(self.notes),
        }

    def render(self) -> str:
        lines = [
            f"dimension n        {self.n}",
            f"affine degree      {self.degree}",
            f"Sing(v)            {'finite' if self.sing_finite else 'not finite'}",
        ]
        if self.rational_singular_points is not None:
            pts = ", ".join("(" + ", ".join(format_rational(c) for c in p) + ")" for p in self.rational_singular_points)
            lines.append(f"rational zeros     {len(self.rational_singular_points)}: {pts}")
            lines.append(f"irrational zeros   {self.irrational_singular_branches} branch(es)")
        lines.extend(f"note: {s}" for s in self.notes)
        return "\n".join(lines)


def structure_report(v: VectorField, budget: int = DEFAULT_BUDGET) -> StructureReport:
    """Finiteness of Sing(v), its rational points, the degree and degenerate-case notes."""
    deg = int(affine_degree(v))
    finite = sing_locus_finite(v, budget)
    pts = None
    irr = 0
    if finite:
        sols = rational_points(singular_ideal(v), budget)
        pts = [tuple(s[x] for x in v.vars) for s in sols.points]
        irr = sols.irrational_branches
    notes = []
    if v.is_zero():
        notes.append("the zero field: every point is singular")
    elif deg <= 1:
        notes.append(
            "affine degree <= 1: linear systems are internal to the constants, "
            "so the strong minimality criterion cannot apply"
        )
    if v.n == 1 and deg == 2:
        notes.append(
            "n = 1, degree 2: an autonomous Riccati equation, internal to the "
            "constants and therefore not strongly minimal"
        )
    if v.n == 1 and deg >= 3:
        notes.append("n = 1: order-one equations are outside the order >= 2 setting of the criterion")
    if v.n == 3 and deg == 2 and all(c.is_homogeneous() for c in v.polys() if c):
        notes.append(
            "homogeneous quadratic field in dimension 3 (Halphen-type): such systems "
            "can be strongly minimal and geometrically trivial for well-chosen parameters"
        )
    return StructureReport(v.n, deg, finite, pts, irr, notes)
