"""
Resonance of a linear part
==========================

A singular point is resonant when the eigenvalues of its linear part satisfy
an integer relation.  The check is bounded by the height K of the relation;
eigenvalues are enclosed in certified disks, and close calls are settled by
exact algebra.
"""

from vfcert import QMatrix, VectorField, linear_part, resonance_check

for rows in ([[1, 0], [0, 2]], [[0, 1], [1, 1]], [[0, 1], [-1, 0]], [[0, 0, 2], [1, 0, 0], [0, 1, 0]]):
    r = resonance_check(QMatrix.from_rows(rows), K=50)
    print(rows, "->", r)
    for e in r.eigen_enclosures:
        print("    ", e)

###############################################################################
# From a field to its linear part

v = VectorField(("x", "y"), ["y + x^2", "x + y + y^2"])
A = linear_part(v, (0, 0))
print("linear part at 0:", A)
print(resonance_check(A, K=50))
