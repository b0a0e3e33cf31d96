"""
First prolongation to the cotangent bundle
==========================================

A field v on affine space lifts to a field on the cotangent bundle that acts
linearly on the fibers.  The function v_bar, the pairing of v with the fiber
coordinates, is a first integral of the lift.
"""

from vfcert import VectorField, apply_derivation, first_prolongation, lie_bracket
from vfcert.prolongation import (
    bott_restriction_check,
    canonical_hypersurface,
    check_horizontal_invariant,
    distribution_conormal_ideal,
    tautological_form,
)
from vfcert.polyring import parse_poly

v = VectorField(("x", "y"), ["y", "x^2 - 1"])
pv = first_prolongation(v)
print("lift:", pv.full)

vbar = tautological_form(v)
print("v_bar =", vbar, "   v^[1](v_bar) =", apply_derivation(pv.full, vbar))

###############################################################################
# The lift turns brackets into derivatives of pairings

xi = VectorField(("x", "y"), ["x*y", "1"])
lhs = apply_derivation(pv.full, tautological_form(xi))
print("v^[1](xi_bar) == [v, xi]_bar:", lhs == tautological_form(lie_bracket(v, xi)))

###############################################################################
# The zero set of v_bar is an invariant horizontal hypersurface

print("canonical hypersurface invariant:", check_horizontal_invariant(pv, canonical_hypersurface(v)))

# the conormal cone of the coordinate line field d/dx is invariant under a diagonal field
diag = VectorField(("x", "y"), ["x", "-3*y"])
cone = distribution_conormal_ideal([VectorField(("x", "y"), ["1", "0"])])
print("cone of d/dx invariant under x d/dx - 3y d/dy:",
      check_horizontal_invariant(first_prolongation(diag), cone))

# rescaling a field by f changes the lift by a multiple of v_bar
print("Bott restriction:", bott_restriction_check(v, parse_poly("x + y^2", ("x", "y"))))
