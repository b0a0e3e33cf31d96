"""
A bounded certificate
=====================

The certifier combines the resonance check and the Darboux search at a
rational singular point.  A failure comes with a witness; success is only
evidence up to the bounds (D, K).
"""

from vfcert import VectorField, certify, structure_report

v = VectorField(("x", "y"), ["y + x^2", "x + y + y^2"])
print(structure_report(v).render())
print()

cert = certify(v, (0, 0), D=3, K=50)
print(cert.render())
print()

###############################################################################
# Two failures with their witnesses

for comps in (["y", "x + y"], ["x", "2*y"]):
    c = certify(VectorField(("x", "y"), comps), (0, 0), D=2, K=50)
    print(comps, c.verdict_label(), c.witness)

###############################################################################
# The JSON form is canonical, so two runs agree byte for byte

print(cert.dumps() == certify(v, (0, 0), D=3, K=50).dumps())
