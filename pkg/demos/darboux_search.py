"""
Searching for invariant hypersurfaces
=====================================

A Darboux polynomial g satisfies v(g) = h g for a polynomial cofactor h.
The search runs over leading monomials up to a degree bound and solves the
resulting bilinear systems exactly.
"""

from vfcert import VectorField, darboux_search
from vfcert.darboux import OneForm, codim1_invariant, cofactor_of, tangency_identity_check
from vfcert.polyring import parse_poly

xy = ("x", "y")
for comps, D in ((["x", "2*y"], 1), (["y", "x + y"], 2), (["1", "2*x"], 2), (["y + x^2", "x + y + y^2"], 3)):
    v = VectorField(xy, comps)
    r = darboux_search(v, D)
    print(v, f"D={D}:", r.status, [(str(p.g), str(p.h)) for p in r.found])

###############################################################################
# Cofactors add under products

v = VectorField(xy, ["x", "2*y"])
g = parse_poly("x^2*y", xy)
print("cofactor of x^2 y:", cofactor_of(v, g))

###############################################################################
# Invariant codimension-one distributions given by one-forms

w = OneForm(xy, ["2*y", "-x"])
print("cofactor of the kernel of 2y dx - x dy:", codim1_invariant(v, w))
print("tangency identity:", tangency_identity_check(v, w))
