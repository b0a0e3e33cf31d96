import random

import pytest

from vfcert.groebner import Ideal
from vfcert.polyring import Poly, parse_expression, parse_poly
from vfcert.prolongation import (
    DependentSpanningSet,
    HorizontalIdeal,
    bott_restriction_check,
    canonical_hypersurface,
    check_horizontal_invariant,
    distribution_conormal_ideal,
    first_prolongation,
    tautological_form,
)
from vfcert.vectorfield import VectorField, apply_derivation, clear_denominators, lie_bracket

from conftest import SCHWARZ_VARS, halphen, random_field, random_poly, schwarzian

XY = ("x", "y")
XYY = ("x", "y", "y1", "y2")


def F(*comps, vars=XY):
    return VectorField(vars, list(comps))


def comps(pv):
    return [str(c) for c in pv.full.components]


def test_first_prolongation_examples():
    assert comps(first_prolongation(F("y", "x"))) == ["y", "x", "-y2", "-y1"]
    assert comps(first_prolongation(F("1", vars=("x",)))) == ["1", "0"]
    pv = first_prolongation(F("x", vars=("x",)))
    assert pv.full.vars == ("x", "y1") and comps(pv) == ["x", "-y1"]


def test_tautological_form_examples():
    assert tautological_form(F("x", "2*y")) == parse_poly("x*y1 + 2*y*y2", XYY)
    assert tautological_form(F("0", "0")).is_zero()
    h = halphen("1/2", "1/3", "1/4")
    amb = h.vars + ("y1", "y2", "y3")
    expected = sum(
        (c.as_poly().embed(amb) * Poly.var(amb, y) for c, y in zip(h.components, amb[3:])),
        Poly.zero(amb),
    )
    assert tautological_form(h) == expected


def test_canonical_hypersurface_examples():
    assert [str(g) for g in canonical_hypersurface(F("x", "2*y")).ideal.generators] == ["x*y1 + 2*y*y2"]
    assert [str(g) for g in canonical_hypersurface(F("1", "0")).ideal.generators] == ["y1"]
    assert canonical_hypersurface(F("y", "x")).ideal.generators == (parse_poly("y*y1 + x*y2", XYY),)
    with pytest.raises(ValueError):
        canonical_hypersurface(F("0", "0"))


def test_check_horizontal_invariant_examples():
    v = F("x", "2*y")
    assert check_horizontal_invariant(first_prolongation(v), canonical_hypersurface(v))
    dy = HorizontalIdeal(Ideal(XYY, [parse_poly("y2", XYY)]), XY, ("y1", "y2"))
    assert check_horizontal_invariant(first_prolongation(v), dy)
    assert not check_horizontal_invariant(first_prolongation(F("y", "x")), dy)


def test_horizontal_ideal_requires_fiber_homogeneity():
    with pytest.raises(ValueError):
        HorizontalIdeal(Ideal(XYY, [parse_poly("y1 + 1", XYY)]), XY, ("y1", "y2"))


def test_horizontal_ideal_json_round_trip():
    h = canonical_hypersurface(F("x", "2*y"))
    again = HorizontalIdeal.from_json(h.to_json())
    assert again.ideal.generators == h.ideal.generators
    assert h.to_json() == {"vars": ["x", "y"], "fiber_vars": ["y1", "y2"], "generators": ["x*y1 + 2*y*y2"]}


def test_conormal_ideal_examples():
    assert [str(g) for g in distribution_conormal_ideal([F("1", "0")]).ideal.generators] == ["y1"]
    xyz = ("x", "y", "z")
    h = distribution_conormal_ideal([F("1", "0", "0", vars=xyz), F("0", "1", "0", vars=xyz)])
    assert [str(g) for g in h.ideal.generators] == ["y1", "y2"]


def test_conormal_rejects_dependent_set():
    with pytest.raises(DependentSpanningSet) as info:
        distribution_conormal_ideal([F("x", "y"), F("2*x", "2*y")])
    assert len(info.value.relation) == 2


def test_schwarzian_foliation_is_invariant():
    v1, v2, _ = schwarzian(parse_expression("1/y", SCHWARZ_VARS))
    cone = distribution_conormal_ideal([v1, v2], rng=random.Random(5))
    pv = first_prolongation(clear_denominators(v1), cone.fiber_vars)
    assert check_horizontal_invariant(pv, cone)


def test_bott_examples():
    v = F("x", "2*y")
    assert bott_restriction_check(v, parse_poly("x", XY))
    assert bott_restriction_check(v, Poly.constant(XY, 3))
    # the difference is -d f/dx_i times v_bar
    f = parse_poly("x", XY)
    fv = first_prolongation(v.scale(f)).full
    pv = first_prolongation(v).full
    vbar = tautological_form(v)
    diff = fv.components[2].as_poly() - f.embed(XYY) * pv.components[2].as_poly()
    assert diff == -vbar


# ---------------------------------------------------------------- properties

def _random_case(rng):
    n = rng.choice([2, 3])
    return random_field(rng, n, 2)


def test_prolongation_duality():
    rng = random.Random(41)
    for _ in range(40):
        v = _random_case(rng)
        xi = random_field(rng, v.n, 2, nonzero=False)
        pv = first_prolongation(v)
        lhs = apply_derivation(pv.full, tautological_form(xi))
        assert lhs == tautological_form(lie_bracket(v, xi))


def test_first_integral_and_fiber_linearity():
    rng = random.Random(42)
    for _ in range(40):
        v = _random_case(rng)
        pv = first_prolongation(v)
        assert apply_derivation(pv.full, tautological_form(v)).is_zero()
        n = v.n
        block = range(n, 2 * n)
        for c in pv.full.components[n:]:
            p = c.as_poly()
            assert p.is_zero() or (p.is_homogeneous(block) and all(sum(m[i] for i in block) == 1 for m in p.terms))
        assert pv.full.components[:n] == tuple(c.embed(pv.ambient) for c in v.components)


def test_bott_restriction_randomized():
    rng = random.Random(43)
    for _ in range(100):
        v = _random_case(rng)
        f = random_poly(rng, v.vars, 2)
        assert bott_restriction_check(v, f)


def test_invariant_distribution_fixture():
    # [v, d/dx] and [v, d/dy] stay in the span of the coordinate fields for a linear diagonal v
    rng = random.Random(44)
    for _ in range(10):
        a, b = rng.randint(1, 5), rng.randint(-5, -1)
        v = F(f"{a}*x", f"{b}*y")
        dx = F("1", "0")
        br = lie_bracket(v, dx)
        assert br == dx.scale(-a)
        cone = distribution_conormal_ideal([dx])
        assert check_horizontal_invariant(first_prolongation(v), cone)
