"""
Homogenization and projective charts
====================================

An affine field of degree d extends to a homogeneous field on projective
space, defined up to multiples of the Euler field.  Each standard chart gives
back an affine derivation.
"""

from vfcert import VectorField, homogenize_affine
from vfcert.projective import (
    chart_derivation,
    dehomogenize,
    euler_field,
    hyperplane_invariant,
    modulo_euler_equal,
    pole_order,
)
from vfcert.polyring import Poly, parse_expression

v = VectorField(("x", "y"), ["y", "x^2 + y"])
h = homogenize_affine(v, 2)
print("homogeneous representative:", h)
print("hyperplane at infinity invariant:", hyperplane_invariant(h))
print("chart 0 gives back v:", chart_derivation(h, 0, v.vars) == v)
print("dehomogenize gives back v:", dehomogenize(h, v.vars) == v)

###############################################################################
# The same field seen from another chart

print("chart 1:", chart_derivation(h, 1))

###############################################################################
# Adding a multiple of the Euler field changes nothing downstairs

E = euler_field(2)
shifted = h + E.scale(Poly.var(h.vars, "X1"))
print("same class mod Euler:", modulo_euler_equal(h, shifted))
print("same chart derivation:", chart_derivation(shifted, 1) == chart_derivation(h, 1))

###############################################################################
# Pole order along a coordinate hyperplane of a rational field

r = VectorField(("x", "y"), [parse_expression("1/x^2", ("x", "y")), "y"])
print("pole order along x = 0:", pole_order(r, "x"))
