import json
import re

import pytest

from vfcert.certifier import (
    A_FAILS,
    B_FAILS,
    EVIDENCE,
    INCONCLUSIVE,
    canonical_json,
    certify,
    field_fingerprint,
    structure_report,
)
from vfcert.darboux import cofactor_of
from vfcert.groebner import Ideal
from vfcert.polyring import parse_poly
from vfcert.singularity import NONRESONANT, RESONANT, NotSingular
from vfcert.vectorfield import VectorField

from conftest import halphen

XY = ("x", "y")
CRAFTED = VectorField(XY, ["y + x^2", "x + y + y^2"])
GOLDEN = VectorField(XY, ["y", "x + y"])
DIAG = VectorField(XY, ["x", "2*y"])


@pytest.fixture(scope="module")
def crafted_cert():
    return certify(CRAFTED, (0, 0), D=3, K=50)


def test_crafted_field_gives_evidence(crafted_cert):
    c = crafted_cert
    assert c.verdict == EVIDENCE
    assert c.resonance.status == NONRESONANT and c.resonance.K == 50
    assert c.darboux.status == "COMPLETE" and c.darboux.found == []
    assert c.sing_finite is True
    assert c.verdict_label() == "EVIDENCE_FOR_MINIMALITY(D=3, K=50)"


def test_golden_field_fails_hypothesis_b():
    c = certify(GOLDEN, (0, 0), D=2, K=50)
    assert c.verdict == B_FAILS
    g = parse_poly(c.witness["g"], XY)
    assert g.degree() == 2 and g.evaluate((0, 0)) == 0
    assert cofactor_of(GOLDEN, g) == parse_poly(c.witness["h"], XY)


def test_diagonal_field_fails_hypothesis_a():
    c = certify(DIAG, (0, 0), D=1, K=50)
    assert c.verdict == A_FAILS
    assert c.witness == {"resonance": [2, -1]}
    # every stage still ran
    assert c.darboux is not None and c.sing_finite is not None


def test_not_singular_point_raises():
    with pytest.raises(NotSingular):
        certify(GOLDEN, (1, 0))


def test_zero_field_rejected():
    with pytest.raises(ValueError):
        certify(VectorField(XY, ["0", "0"]), (0, 0))


def test_infinite_singular_locus_is_inconclusive():
    v = VectorField(XY, ["x*y", "x*(x + y)"])
    c = certify(v, (0, 0), D=1, K=5)
    assert c.sing_finite is False
    assert c.verdict in (INCONCLUSIVE, A_FAILS, B_FAILS)
    if c.verdict == INCONCLUSIVE:
        assert any("not finite" in r for r in c.reasons)


def test_budget_exhaustion_is_inconclusive():
    c = certify(CRAFTED, (0, 0), D=2, K=5, budget=3)
    assert c.verdict == INCONCLUSIVE
    assert any("budget" in r for r in c.reasons)


def test_supplied_invariant_ideal_through_point():
    # a nonlinear field whose only invariant curve through 0 is y = x^2 is not found at D = 1
    v = VectorField(XY, ["x", "2*y + 3*(y - x^2)^2"])
    ideal = Ideal(XY, [parse_poly("y - x^2", XY)])
    c = certify(v, (0, 0), D=1, K=5, invariant_ideals=[ideal])
    assert c.verdict in (A_FAILS, B_FAILS)
    c2 = certify(VectorField(XY, ["-x + y^2", "x + 3*y"]), (0, 0), D=1, K=5,
                 invariant_ideals=[Ideal(XY, [parse_poly("x", XY)])])
    # <x> is not invariant here, so it cannot be a witness
    assert c2.witness is None or "invariant_ideal" not in c2.witness


def test_json_is_deterministic_and_canonical(crafted_cert):
    again = certify(CRAFTED, (0, 0), D=3, K=50)
    assert crafted_cert.dumps() == again.dumps()
    data = json.loads(crafted_cert.dumps())
    assert canonical_json(data) == crafted_cert.dumps()
    assert data["field_fingerprint"] == field_fingerprint(CRAFTED)
    assert data["bounds"] == {"D": 3, "K": 50}


def test_disclaimer_states_the_bounds(crafted_cert):
    text = crafted_cert.render()
    assert "(D, K) = (3, 50)" in text
    assert "not a proof" in text
    # every mention of non-resonance or absence carries its bound
    for m in re.finditer(r"non-resonant[^.]*", text):
        assert "K" in m.group(0) or "height" in m.group(0)
    for m in re.finditer(r"no invariant[^.]*", text):
        assert "degree" in m.group(0)


def test_monotone_in_bounds(crafted_cert):
    assert crafted_cert.verdict == EVIDENCE
    for D, K in ((1, 10), (2, 50), (3, 20), (1, 1)):
        assert certify(CRAFTED, (0, 0), D=D, K=K).verdict == EVIDENCE


def test_failure_witnesses_are_sound():
    fields = [
        GOLDEN,
        VectorField(XY, ["x + y^2", "-y"]),
        VectorField(XY, ["y", "-x + x^2"]),
        VectorField(XY, ["2*x + x*y", "3*y"]),
    ]
    for v in fields:
        c = certify(v, (0, 0), D=2, K=10)
        if c.verdict == B_FAILS and "g" in c.witness:
            g = parse_poly(c.witness["g"], XY)
            assert g.evaluate((0, 0)) == 0
            assert cofactor_of(v, g) == parse_poly(c.witness["h"], XY)
        if c.verdict == A_FAILS:
            assert c.resonance.status == RESONANT


def test_structure_report_examples():
    r = structure_report(DIAG)
    assert r.sing_finite and r.rational_singular_points == [(0, 0)]
    ric = VectorField(("x",), ["2*x^2 - 3*x + 1"])
    r = structure_report(ric)
    assert r.sing_finite and r.degree == 2 and len(r.rational_singular_points) == 2
    assert any("Riccati" in n for n in r.notes)
    h = structure_report(halphen("1/2", "1/3", "1/4"))
    assert h.degree == 2 and any("Halphen" in n for n in h.notes)
    assert json.loads(canonical_json(h.to_json()))["n"] == 3
