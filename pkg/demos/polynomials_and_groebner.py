"""
Exact polynomials and Groebner bases
====================================

Polynomials are parsed into sparse dictionaries with rational coefficients.
Groebner bases decide ideal membership and find rational points.
"""

from vfcert import Ideal, buchberger, parse_expression, parse_poly, rational_points
from vfcert.groebner import is_zero_dimensional
from vfcert.polyring import format_rational

xy = ("x", "y")
p = parse_poly("(x + y)^3 - 3*x*y*(x + y)", xy)
print("expanded:", p)

# rational functions need the rational mode of the parser
r = parse_expression("(x^2 - y^2)/(x - y)", xy)
print("reduced quotient:", r)

###############################################################################
# A circle meets a line in two points

I = Ideal(xy, [parse_poly("x^2 + y^2 - 25", xy), parse_poly("x - y - 1", xy)])
G = buchberger(I)
print("basis:", [str(g) for g in G.basis])
print("finite:", is_zero_dimensional(G))
for pt in rational_points(I).points:
    print("point:", {k: format_rational(c) for k, c in pt.items()})

# membership is a normal-form test
print("contains x*y - 12:", G.contains(parse_poly("x*y - 12", xy)))
